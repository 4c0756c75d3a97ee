#pragma once

#include <cstdint>
#include <string>
#include <vector>

// GF(p^k) with p prime and p^k <= 2^20.
//
// An element is a uint32_t in [0, q) whose base-p digits, least significant
// first, are the coefficients of its residue polynomial.  So 0 and 1 are the
// ring constants in every field, and (for k >= 2) index p is the class of t.
//
// The modulus is pinned so fields are reproducible across builds: for k >= 2
// the coefficientwise-least monic primitive polynomial of degree k, comparing
// low-degree coefficients first, so generator() is the class of t.  For k == 1
// the modulus is the formality t and generator() is the least primitive root
// mod p.  Multiplication runs on log/exp tables over that generator.

namespace o3 {

using felt = uint32_t;

class Field {
 public:
  Field(uint32_t p, uint32_t k);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }

  // Monic modulus, low-degree coefficients first, length k+1, top coeff 1.
  const std::vector<uint32_t>& modulus() const { return mod_; }

  felt generator() const { return gen_; }

  felt add(felt a, felt b) const;
  felt neg(felt a) const;
  felt sub(felt a, felt b) const { return add(a, neg(b)); }
  felt mul(felt a, felt b) const;
  felt inv(felt a) const;            // throws on 0
  felt pow(felt a, uint64_t e) const;

  // a^(p^i); frobenius(a, k) == a.
  felt frobenius(felt a, uint32_t i = 1) const;

  // Multiplicative order; throws on 0.
  uint32_t element_order(felt a) const;

  // Coefficients of a as a polynomial in the generator's t, low first, length k.
  std::vector<uint32_t> coeffs(felt a) const;
  felt from_coeffs(const std::vector<uint32_t>& c) const;

  // "x^4+2x+1"-style rendering of the residue polynomial, for diagnostics.
  std::string show(felt a) const;

 private:
  uint32_t p_, k_, q_;
  std::vector<uint32_t> mod_;
  felt gen_;
  std::vector<uint32_t> log_;   // log_[a] for a != 0; log_[0] unused
  std::vector<felt> exp_;       // exp_[i] = gen^i, i in [0, q-1)
};

bool is_prime_u32(uint32_t n);

// Distinct prime factors, ascending.  Trial division; n <= 2^32 callers only.
std::vector<uint32_t> prime_factors_u32(uint32_t n);

}  // namespace o3
