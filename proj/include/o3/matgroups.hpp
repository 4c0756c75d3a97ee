#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "o3/matrix.hpp"
#include "o3/perm.hpp"

// Classical matrix groups in dimensions 2..4 as explicit generator lists,
// together with the point sets they act on.  Generator recipes are verified
// at construction time: forms are checked entrywise and group orders are
// checked against the classical formulas by the callers' stabilizer chains.

namespace o3 {

// Gram matrix of the standard hermitian form (antidiagonal ones) on F_{q^2}^n.
Mat hermitian_gram(const Field& F, uint32_t n);
// Gram matrix of the standard symplectic form on F_q^4.
Mat symplectic_gram(const Field& F);

// frob is the Frobenius power giving the conjugation x -> x^(p^frob);
// for unitary groups over GF(q^2) = GF(p^(2e)) pass frob = e.
bool preserves_hermitian(const Mat& g, const Mat& gram, uint32_t frob);
bool preserves_bilinear(const Mat& g, const Mat& gram);

// Generator lists.  Unitary generators are over the field of order q^2.
std::vector<Mat> sl_generators(const Field& F, uint32_t n);
std::vector<Mat> gl_generators(const Field& F, uint32_t n);
std::vector<Mat> su_generators(const Field& Fq2, uint32_t n);
std::vector<Mat> gu_generators(const Field& Fq2, uint32_t n);
std::vector<Mat> sp4_generators(const Field& F);

uint64_t sl_order(uint32_t n, uint64_t q);
uint64_t gl_order(uint32_t n, uint64_t q);
uint64_t su_order(uint32_t n, uint64_t q);
uint64_t gu_order(uint32_t n, uint64_t q);
uint64_t sp4_order(uint64_t q);
uint64_t psl_order(uint32_t n, uint64_t q);
uint64_t psu_order(uint32_t n, uint64_t q);
uint64_t pgl_order(uint32_t n, uint64_t q);
uint64_t pgu_order(uint32_t n, uint64_t q);
uint64_t psp4_order(uint64_t q);

// Point sets.  Projective points are normalized so the first nonzero
// coordinate is 1 and listed in lexicographic coefficient order; the vector
// table lists all nonzero vectors.  Both orders are deterministic.
struct PointTable {
  const Field* F = nullptr;
  uint32_t n = 0;
  bool projective = false;
  std::vector<std::vector<felt>> pts;
  std::unordered_map<uint64_t, uint32_t> index;

  uint32_t size() const { return static_cast<uint32_t>(pts.size()); }
  uint64_t pack(const std::vector<felt>& v) const;
  std::vector<felt> normalize(std::vector<felt> v) const;
  uint32_t find(const std::vector<felt>& v) const;
};

PointTable projective_points(const Field& F, uint32_t n);
PointTable vector_points(const Field& F, uint32_t n);

// Permutation induced on the point table; throws if g does not permute it.
Perm action_perm(const PointTable& tab, const Mat& g);

// Permutation induced by the field automorphism x -> x^(p^i) applied
// coordinatewise (projective tables only; it fixes normalization up to
// rescaling, which find() handles).
Perm frobenius_perm(const PointTable& tab, uint32_t i);

// Representative matrices used by the symbolic cross-checks.

// Unipotent block-diagonal matrix with Jordan blocks of the given sizes
// (sum = n); in characteristic 3 with sizes <= 3 it has order 3.
Mat unipotent_rep(const Field& F, uint32_t n, const std::vector<uint32_t>& blocks);

// Order-3 semisimple representatives, one per conjugacy pattern.
Mat sl2_split_order3(const Field& F);       // diag(w, w^2), needs q = 1 mod 3
Mat sl2_irreducible_order3(const Field& F); // rotation of order 3, q = 2 mod 3
Mat sl3_split_order3(const Field& F);       // diag(1, w, w^2), q = 1 mod 3
Mat sl3_partially_split_order3(const Field& F);  // 1 + rotation block, q = 2 mod 3
Mat gl3_irreducible_order3(const Field& F); // companion of t^3 - c, c a non-cube
Mat su3_split_order3(const Field& Fq2);     // q = 2 mod 3
Mat su3_partially_split_order3(const Field& Fq2);  // q = 1 mod 3
Mat gu3_irreducible_order3(const Field& Fq2);      // q = 2 mod 3
Mat sp4_double_transvection(const Field& F);  // Jordan type [2,2], char 3

// Change of basis S with S^dagger S = hermitian_gram (n = 3), used to move
// unitary representatives from the identity form to the standard one.
Mat hermitian_basis_change(const Field& Fq2);

}  // namespace o3
