#include "o3/field.hpp"

#include <cassert>
#include <numeric>
#include <stdexcept>

namespace o3 {

bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<uint32_t> prime_factors_u32(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t d = 2; (uint64_t)d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

// Residue arithmetic on raw coefficient vectors (length k), used only while
// scanning for the modulus; everything afterwards runs on log/exp tables.
struct PolyCtx {
  uint32_t p, k;
  const std::vector<uint32_t>& mod;  // length k+1, monic

  // r = a*b mod (mod).  Schoolbook then reduce, top down.
  std::vector<uint32_t> mul(const std::vector<uint32_t>& a,
                            const std::vector<uint32_t>& b) const {
    std::vector<uint32_t> prod(2 * k - 1, 0);
    for (uint32_t i = 0; i < k; ++i) {
      if (!a[i]) continue;
      for (uint32_t j = 0; j < k; ++j)
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (uint32_t d = 2 * k - 2; d + 1 > k; --d) {
      uint32_t c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      // t^d = -sum mod_j t^(d-k+j)
      for (uint32_t j = 0; j < k; ++j) {
        uint32_t& slot = prod[d - k + j];
        slot = (slot + c * (p - mod[j] % p)) % p;
      }
    }
    prod.resize(k);
    return prod;
  }
};

uint32_t pow_u32(uint32_t b, uint32_t e) {
  uint64_t r = 1, x = b;
  while (e) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  if (r > (1u << 20)) throw std::invalid_argument("field size exceeds 2^20");
  return (uint32_t)r;
}

uint32_t least_primitive_root(uint32_t p) {
  if (p == 2) return 1;
  auto primes = prime_factors_u32(p - 1);
  for (uint32_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint32_t r : primes) {
      // g^((p-1)/r) mod p
      uint64_t acc = 1, base = g;
      uint32_t e = (p - 1) / r;
      while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      if (acc == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

}  // namespace

Field::Field(uint32_t p, uint32_t k) : p_(p), k_(k) {
  if (!is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k < 1) throw std::invalid_argument("field extension degree must be >= 1");
  q_ = pow_u32(p, k);
  if (q_ < 2 || q_ > (1u << 20))
    throw std::invalid_argument("field size out of range (2..2^20)");

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);

  if (k == 1) {
    gen_ = least_primitive_root(p);
    mod_ = {0, 1};  // the formality t; arithmetic is plain mod p
    uint64_t cur = 1;
    for (uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = (felt)cur;
      log_[cur] = i;
      cur = cur * gen_ % p;
    }
    return;
  }

  // Scan monic degree-k candidates in coefficientwise order, low degree first.
  // The walk x, x^2, ... in GF(p)[t]/(f) certifies f primitive iff the class
  // of t has order exactly q-1: the powers then exhaust all nonzero residues,
  // so the quotient is a field and t generates its multiplicative group.  Any
  // reducible f caps unit orders strictly below q-1, so nothing slips through.
  std::vector<uint32_t> c(k + 1, 0);
  c[k] = 1;
  gen_ = (felt)p;  // class of t
  for (;;) {
    // next candidate: increment low coefficients base p
    uint32_t i = 0;
    while (i < k && ++c[i] == p) c[i++] = 0;
    if (i == k) throw std::logic_error("primitive modulus scan exhausted");
    if (c[0] == 0) continue;  // t | f, not even irreducible

    PolyCtx ctx{p, k, c};
    std::vector<uint32_t> x(k, 0), cur(k, 0);
    x[1] = 1;
    cur[0] = 1;
    auto pack = [&](const std::vector<uint32_t>& v) {
      felt e = 0;
      for (uint32_t d = k; d-- > 0;) e = e * p + v[d];
      return e;
    };
    bool primitive = true;
    for (uint32_t step = 1; step < q_ - 1; ++step) {
      cur = ctx.mul(cur, x);
      felt e = pack(cur);
      if (e == 1) {
        primitive = false;  // order < q-1
        break;
      }
      exp_[step] = e;
      log_[e] = step;
    }
    if (primitive) {
      cur = ctx.mul(cur, x);
      if (pack(cur) != 1) continue;  // t not a unit of full order
      mod_ = c;
      exp_[0] = 1;
      log_[1] = 0;
      return;
    }
  }
}

felt Field::add(felt a, felt b) const {
  if (p_ == 2) return a ^ b;
  felt r = 0, mul = 1;
  for (uint32_t d = 0; d < k_; ++d) {
    r += (a % p_ + b % p_) % p_ * mul;
    a /= p_;
    b /= p_;
    mul *= p_;
  }
  return r;
}

felt Field::neg(felt a) const {
  if (p_ == 2) return a;
  felt r = 0, mul = 1;
  for (uint32_t d = 0; d < k_; ++d) {
    r += (p_ - a % p_) % p_ * mul;
    a /= p_;
    mul *= p_;
  }
  return r;
}

felt Field::mul(felt a, felt b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[((uint64_t)log_[a] + log_[b]) % (q_ - 1)];
}

felt Field::inv(felt a) const {
  if (a == 0) throw std::domain_error("division by zero in field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

felt Field::pow(felt a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(uint64_t)log_[a] * (e % (q_ - 1)) % (q_ - 1)];
}

felt Field::frobenius(felt a, uint32_t i) const {
  if (a == 0) return 0;
  uint64_t e = 1;
  for (uint32_t j = 0; j < i; ++j) e = e * p_ % (q_ - 1);
  return pow(a, e);
}

uint32_t Field::element_order(felt a) const {
  if (a == 0) throw std::domain_error("0 has no multiplicative order");
  return (q_ - 1) / std::gcd(q_ - 1, log_[a]);
}

std::vector<uint32_t> Field::coeffs(felt a) const {
  std::vector<uint32_t> c(k_);
  for (uint32_t d = 0; d < k_; ++d) {
    c[d] = a % p_;
    a /= p_;
  }
  return c;
}

felt Field::from_coeffs(const std::vector<uint32_t>& c) const {
  assert(c.size() <= k_);
  felt e = 0;
  for (size_t d = c.size(); d-- > 0;) {
    assert(c[d] < p_);
    e = e * p_ + c[d];
  }
  return e;
}

std::string Field::show(felt a) const {
  if (a == 0) return "0";
  std::string s;
  auto c = coeffs(a);
  for (uint32_t d = k_; d-- > 0;) {
    if (!c[d]) continue;
    if (!s.empty()) s += "+";
    if (d == 0 || c[d] != 1) s += std::to_string(c[d]);
    if (d >= 1) s += "t";
    if (d >= 2) s += "^" + std::to_string(d);
  }
  return s;
}

}  // namespace o3
