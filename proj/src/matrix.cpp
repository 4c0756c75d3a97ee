#include "o3/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace o3 {

void mat_check(bool cond, const std::string& what) {
  if (!cond) throw std::logic_error("matrix invariant violated: " + what);
}

bool Mat::operator==(const Mat& o) const {
  if (n != o.n) return false;
  for (uint32_t i = 0; i < n * n; ++i)
    if (a[i] != o.a[i]) return false;
  return true;
}

Mat mat_zero(const Field& F, uint32_t n) {
  mat_check(n >= 1 && n <= 4, "dimension in [1,4]");
  Mat m;
  m.F = &F;
  m.n = n;
  return m;
}

Mat mat_identity(const Field& F, uint32_t n) {
  Mat m = mat_zero(F, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mat_scalar(const Field& F, uint32_t n, felt c) {
  Mat m = mat_zero(F, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  mat_check(x.F == y.F && x.n == y.n, "operands share field and dimension");
  const Field& F = *x.F;
  Mat r = mat_zero(F, x.n);
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t j = 0; j < x.n; ++j) {
      felt s = 0;
      for (uint32_t k = 0; k < x.n; ++k) s = F.add(s, F.mul(x.at(i, k), y.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

Mat mat_add(const Mat& x, const Mat& y) {
  mat_check(x.F == y.F && x.n == y.n, "operands share field and dimension");
  Mat r = x;
  for (uint32_t i = 0; i < x.n * x.n; ++i) r.a[i] = x.F->add(x.a[i], y.a[i]);
  return r;
}

Mat mat_sub(const Mat& x, const Mat& y) {
  mat_check(x.F == y.F && x.n == y.n, "operands share field and dimension");
  Mat r = x;
  for (uint32_t i = 0; i < x.n * x.n; ++i) r.a[i] = x.F->sub(x.a[i], y.a[i]);
  return r;
}

Mat mat_scale(felt c, const Mat& x) {
  Mat r = x;
  for (uint32_t i = 0; i < x.n * x.n; ++i) r.a[i] = x.F->mul(c, x.a[i]);
  return r;
}

Mat mat_pow(Mat x, uint64_t e) {
  Mat r = mat_identity(*x.F, x.n);
  while (e) {
    if (e & 1) r = mat_mul(r, x);
    x = mat_mul(x, x);
    e >>= 1;
  }
  return r;
}

Mat mat_transpose(const Mat& x) {
  Mat r = mat_zero(*x.F, x.n);
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t j = 0; j < x.n; ++j) r.at(j, i) = x.at(i, j);
  return r;
}

Mat mat_conj_transpose(const Mat& x, uint32_t frob) {
  Mat r = mat_zero(*x.F, x.n);
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t j = 0; j < x.n; ++j) r.at(j, i) = x.F->frobenius(x.at(i, j), frob);
  return r;
}

felt mat_det(const Mat& x) {
  const Field& F = *x.F;
  Mat m = x;
  felt det = 1;
  for (uint32_t col = 0; col < m.n; ++col) {
    uint32_t piv = col;
    while (piv < m.n && m.at(piv, col) == 0) ++piv;
    if (piv == m.n) return 0;
    if (piv != col) {
      for (uint32_t j = 0; j < m.n; ++j) std::swap(m.a[piv * m.n + j], m.a[col * m.n + j]);
      det = F.neg(det);
    }
    det = F.mul(det, m.at(col, col));
    const felt inv_piv = F.inv(m.at(col, col));
    for (uint32_t i = col + 1; i < m.n; ++i) {
      if (m.at(i, col) == 0) continue;
      const felt f = F.mul(m.at(i, col), inv_piv);
      for (uint32_t j = col; j < m.n; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(col, j)));
    }
  }
  return det;
}

uint32_t mat_rank(Mat m) {
  const Field& F = *m.F;
  uint32_t rank = 0;
  for (uint32_t col = 0; col < m.n && rank < m.n; ++col) {
    uint32_t piv = rank;
    while (piv < m.n && m.at(piv, col) == 0) ++piv;
    if (piv == m.n) continue;
    if (piv != rank)
      for (uint32_t j = 0; j < m.n; ++j) std::swap(m.a[piv * m.n + j], m.a[rank * m.n + j]);
    const felt inv_piv = F.inv(m.at(rank, col));
    for (uint32_t i = rank + 1; i < m.n; ++i) {
      if (m.at(i, col) == 0) continue;
      const felt f = F.mul(m.at(i, col), inv_piv);
      for (uint32_t j = col; j < m.n; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

Mat mat_inverse(const Mat& x) {
  const Field& F = *x.F;
  Mat m = x;
  Mat inv = mat_identity(F, x.n);
  for (uint32_t col = 0; col < m.n; ++col) {
    uint32_t piv = col;
    while (piv < m.n && m.at(piv, col) == 0) ++piv;
    if (piv == m.n) throw std::domain_error("mat_inverse: singular matrix");
    if (piv != col)
      for (uint32_t j = 0; j < m.n; ++j) {
        std::swap(m.a[piv * m.n + j], m.a[col * m.n + j]);
        std::swap(inv.a[piv * m.n + j], inv.a[col * m.n + j]);
      }
    const felt s = F.inv(m.at(col, col));
    for (uint32_t j = 0; j < m.n; ++j) {
      m.at(col, j) = F.mul(s, m.at(col, j));
      inv.at(col, j) = F.mul(s, inv.at(col, j));
    }
    for (uint32_t i = 0; i < m.n; ++i) {
      if (i == col || m.at(i, col) == 0) continue;
      const felt f = m.at(i, col);
      for (uint32_t j = 0; j < m.n; ++j) {
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(col, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(f, inv.at(col, j)));
      }
    }
  }
  return inv;
}

bool mat_is_scalar(const Mat& x, felt* lambda) {
  const felt d = x.at(0, 0);
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t j = 0; j < x.n; ++j)
      if (x.at(i, j) != (i == j ? d : 0)) return false;
  if (lambda) *lambda = d;
  return true;
}

namespace {

// Polynomials over F, coefficients low degree first, for the symbolic
// determinant below.  Interpolating det(tI - x) from point values breaks
// down when q <= n, so the expansion stays exact.
using Poly = std::vector<felt>;

Poly padd(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  return r;
}

Poly pmul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return r;
}

Poly pneg(const Field& F, Poly a) {
  for (felt& c : a) c = F.neg(c);
  return a;
}

// det of a matrix of polynomials by first-column cofactor expansion.
Poly pdet(const Field& F, const std::vector<Poly>& m, uint32_t n) {
  if (n == 1) return m[0];
  Poly acc;
  for (uint32_t i = 0; i < n; ++i) {
    if (m[i * n].empty()) continue;
    std::vector<Poly> minor;
    minor.reserve((n - 1) * (n - 1));
    for (uint32_t r = 0; r < n; ++r) {
      if (r == i) continue;
      for (uint32_t c = 1; c < n; ++c) minor.push_back(m[r * n + c]);
    }
    Poly term = pmul(F, m[i * n], pdet(F, minor, n - 1));
    if (i % 2 == 1) term = pneg(F, term);
    acc = padd(F, acc, term);
  }
  return acc;
}

}  // namespace

std::vector<felt> char_poly(const Mat& x) {
  const Field& F = *x.F;
  std::vector<Poly> m(x.n * x.n);
  for (uint32_t i = 0; i < x.n; ++i)
    for (uint32_t j = 0; j < x.n; ++j) {
      Poly e = {F.neg(x.at(i, j))};
      if (i == j) e.push_back(1);
      m[i * x.n + j] = e;
    }
  Poly d = pdet(F, m, x.n);
  d.resize(x.n + 1, 0);
  mat_check(d[x.n] == 1, "characteristic polynomial is monic");
  return d;
}

felt poly_eval(const Field& F, const std::vector<felt>& coeffs, felt x) {
  felt r = 0;
  for (size_t i = coeffs.size(); i-- > 0;) r = F.add(F.mul(r, x), coeffs[i]);
  return r;
}

uint32_t poly_root_multiplicity(const Field& F, std::vector<felt> coeffs, felt r) {
  uint32_t mult = 0;
  while (coeffs.size() > 1 && poly_eval(F, coeffs, r) == 0) {
    // Synthetic division by (t - r), high coefficients first.
    std::vector<felt> q(coeffs.size() - 1, 0);
    felt carry = coeffs.back();
    for (size_t i = coeffs.size() - 1; i-- > 0;) {
      q[i] = carry;
      carry = F.add(coeffs[i], F.mul(carry, r));
    }
    mat_check(carry == 0, "synthetic division remainder vanishes at a root");
    coeffs = std::move(q);
    ++mult;
  }
  return mult;
}

std::string mat_show(const Mat& x) {
  std::ostringstream os;
  os << "[";
  for (uint32_t i = 0; i < x.n; ++i) {
    if (i) os << "; ";
    for (uint32_t j = 0; j < x.n; ++j) {
      if (j) os << " ";
      os << x.F->show(x.at(i, j));
    }
  }
  os << "]";
  return os.str();
}

std::vector<felt> mat_apply(const Mat& x, const std::vector<felt>& v) {
  mat_check(v.size() == x.n, "vector length matches dimension");
  const Field& F = *x.F;
  std::vector<felt> r(x.n, 0);
  for (uint32_t i = 0; i < x.n; ++i) {
    felt s = 0;
    for (uint32_t j = 0; j < x.n; ++j) s = F.add(s, F.mul(x.at(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

}  // namespace o3
