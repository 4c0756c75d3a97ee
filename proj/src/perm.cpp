#include "o3/perm.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "o3/kernels.hpp"

namespace o3 {

Perm::Perm(uint32_t n) : n_(n), img_(n + 1, 0) {
  for (uint32_t i = 0; i < n; ++i) img_[i] = (uint16_t)i;
}

Perm Perm::from_images(std::vector<uint16_t> images) {
  size_t n = images.size();
  if (n > 65535) throw std::invalid_argument("permutation degree exceeds 65535");
  std::vector<uint8_t> seen(n, 0);
  for (uint16_t v : images) {
    if (v >= n || seen[v]) throw std::invalid_argument("images are not a bijection");
    seen[v] = 1;
  }
  Perm p;
  p.n_ = (uint32_t)n;
  p.img_ = std::move(images);
  p.img_.push_back(0);
  return p;
}

bool Perm::is_identity() const {
  return kernels::active().is_identity(img_.data(), n_);
}

Perm Perm::inverse() const {
  Perm r(n_);
  for (uint32_t i = 0; i < n_; ++i) r.img_[img_[i]] = (uint16_t)i;
  return r;
}

Perm Perm::conjugate_by(const Perm& g) const {
  if (g.n_ != n_) throw std::invalid_argument("degree mismatch in conjugation");
  Perm r(n_);
  for (uint32_t i = 0; i < n_; ++i) r.img_[g.img_[i]] = g.img_[img_[i]];
  return r;
}

uint64_t Perm::order() const {
  std::vector<uint8_t> seen(n_, 0);
  uint64_t ord = 1;
  for (uint32_t i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    for (uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    uint64_t g = std::gcd(ord, len);
    if (ord / g > UINT64_MAX / len) throw std::overflow_error("element order overflow");
    ord = ord / g * len;
  }
  return ord;
}

uint32_t Perm::parity() const {
  std::vector<uint8_t> seen(n_, 0);
  uint32_t transpositions = 0;
  for (uint32_t i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    uint32_t len = 0;
    for (uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions & 1;
}

bool Perm::is_involution() const {
  bool moved = false;
  for (uint32_t i = 0; i < n_; ++i) {
    uint16_t j = img_[i];
    if (j == i) continue;
    if (img_[j] != i) return false;
    moved = true;
  }
  return moved;
}

bool Perm::has_order3() const {
  bool moved = false;
  for (uint32_t i = 0; i < n_; ++i) {
    uint16_t j = img_[i];
    if (j == i) continue;
    uint16_t k = img_[j];
    if (k == i || img_[k] != i) return false;  // 2-cycle or length > 3
    moved = true;
  }
  return moved;
}

std::vector<uint32_t> Perm::cycle_lengths() const {
  std::vector<uint8_t> seen(n_, 0);
  std::vector<uint32_t> lens;
  for (uint32_t i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    uint32_t len = 0;
    for (uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<>());
  return lens;
}

Perm::CycleShape Perm::cycle_shape() const {
  CycleShape s;
  auto lens = cycle_lengths();
  for (uint32_t len : lens) {
    if (len == 1) {
      ++s.fixed;
    } else if (!s.cycles.empty() && s.cycles.back().first == len) {
      ++s.cycles.back().second;
    } else {
      s.cycles.push_back({len, 1});
    }
  }
  return s;
}

std::string Perm::shape_string() const {
  auto s = cycle_shape();
  std::string out;
  for (auto [len, count] : s.cycles) {
    if (!out.empty()) out += " ";
    out += std::to_string(len) + "^" + std::to_string(count);
  }
  if (s.fixed) {
    if (!out.empty()) out += " ";
    out += "1^" + std::to_string(s.fixed);
  }
  return out.empty() ? "1^0" : out;
}

std::string Perm::cycle_string() const {
  std::vector<uint8_t> seen(n_, 0);
  std::string out;
  for (uint32_t i = 0; i < n_; ++i) {
    if (seen[i] || img_[i] == i) continue;
    out += "(";
    bool first = true;
    for (uint32_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

uint32_t Perm::smallest_moved() const {
  for (uint32_t i = 0; i < n_; ++i)
    if (img_[i] != i) return i;
  return n_;
}

bool Perm::operator==(const Perm& o) const {
  if (n_ != o.n_) return false;
  return std::equal(img_.begin(), img_.begin() + n_, o.img_.begin());
}

Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch in compose");
  Perm r(a.degree());
  kernels::active().compose(r.data(), a.data(), b.data(), a.degree());
  return r;
}

void compose_into(Perm& dst, const Perm& a, const Perm& b) {
  kernels::active().compose(dst.data(), a.data(), b.data(), a.degree());
}

}  // namespace o3
