#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "o3/field.hpp"

// Dense little matrices (n <= 4) over a Field, row major.  Everything is
// exact; mat_check throws on violated construction invariants instead of
// asserting so the checks survive release builds.

namespace o3 {

struct Mat {
  const Field* F = nullptr;
  uint32_t n = 0;
  std::array<felt, 16> a{};

  felt& at(uint32_t i, uint32_t j) { return a[i * n + j]; }
  felt at(uint32_t i, uint32_t j) const { return a[i * n + j]; }
  bool operator==(const Mat& o) const;
};

void mat_check(bool cond, const std::string& what);

Mat mat_zero(const Field& F, uint32_t n);
Mat mat_identity(const Field& F, uint32_t n);
Mat mat_scalar(const Field& F, uint32_t n, felt c);

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_add(const Mat& x, const Mat& y);
Mat mat_sub(const Mat& x, const Mat& y);
Mat mat_scale(felt c, const Mat& x);
Mat mat_pow(Mat x, uint64_t e);
Mat mat_transpose(const Mat& x);

// Entrywise a -> a^(p^frob) then transpose (hermitian adjoint when frob = k/2).
Mat mat_conj_transpose(const Mat& x, uint32_t frob);

felt mat_det(const Mat& x);
uint32_t mat_rank(Mat x);
Mat mat_inverse(const Mat& x);  // throws on singular

bool mat_is_scalar(const Mat& x, felt* lambda = nullptr);

// det(tI - x), coefficients low degree first, length n+1, monic.
std::vector<felt> char_poly(const Mat& x);

felt poly_eval(const Field& F, const std::vector<felt>& coeffs, felt x);

// Multiplicity of root r in coeffs (0 if not a root).
uint32_t poly_root_multiplicity(const Field& F, std::vector<felt> coeffs, felt r);

std::string mat_show(const Mat& x);

std::vector<felt> mat_apply(const Mat& x, const std::vector<felt>& v);

}  // namespace o3
