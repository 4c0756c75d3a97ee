#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Permutations of {0, ..., n-1}, n <= 65535, stored as image arrays.
//
// Composition is left-to-right: (p * q)[i] = q[p[i]], i.e. apply p first.
// The image buffer carries one padding slot past the end so the vectorized
// compose kernel may over-read the final gather lane; the pad value is never
// observed.

namespace o3 {

class Perm {
 public:
  Perm() = default;
  explicit Perm(uint32_t n);  // identity

  static Perm from_images(std::vector<uint16_t> images);

  uint32_t degree() const { return n_; }
  uint16_t operator[](uint32_t i) const { return img_[i]; }
  const uint16_t* data() const { return img_.data(); }
  uint16_t* data() { return img_.data(); }

  bool is_identity() const;
  Perm inverse() const;

  // g^-1 * (*this) * g
  Perm conjugate_by(const Perm& g) const;

  uint64_t order() const;
  uint32_t parity() const;  // 0 even, 1 odd

  // Early-exit structure tests; both reject the identity.
  bool is_involution() const;
  bool has_order3() const;

  // All cycle lengths including fixed points, descending.
  std::vector<uint32_t> cycle_lengths() const;

  // Counts of nontrivial cycles as {length: count}, plus fixed-point count.
  struct CycleShape {
    std::vector<std::pair<uint32_t, uint32_t>> cycles;  // (len, count), len desc
    uint32_t fixed = 0;
  };
  CycleShape cycle_shape() const;

  // "3^2 1^3"-style shape label; identity renders as "1^n".
  std::string shape_string() const;

  // "(0 1 2)(4 5)" with fixed points omitted; identity renders as "()".
  std::string cycle_string() const;

  uint32_t smallest_moved() const;  // degree() if identity

  bool operator==(const Perm& o) const;
  bool operator!=(const Perm& o) const { return !(*this == o); }

 private:
  uint32_t n_ = 0;
  std::vector<uint16_t> img_;  // n_ + 1 slots; img_[n_] is padding
};

Perm compose(const Perm& a, const Perm& b);

// dst = a * b without allocation; dst must already have matching degree and
// must not alias a or b.
void compose_into(Perm& dst, const Perm& a, const Perm& b);

}  // namespace o3
