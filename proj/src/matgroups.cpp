#include "o3/matgroups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace o3 {

namespace {

// F_p-basis of F_q as packed elements: t^i packs to p^i.
std::vector<felt> prime_field_basis(const Field& F) {
  std::vector<felt> b;
  felt v = 1;
  for (uint32_t i = 0; i < F.k(); ++i) {
    b.push_back(v);
    v *= F.p();
  }
  return b;
}

// q with q^2 = |F|; only meaningful for the unitary families.
uint32_t unitary_q(const Field& Fq2) {
  mat_check(Fq2.k() % 2 == 0, "unitary field has even degree over the prime field");
  uint32_t q = 1;
  for (uint32_t i = 0; i < Fq2.k() / 2; ++i) q *= Fq2.p();
  return q;
}

felt conj_q(const Field& Fq2, felt a) { return Fq2.frobenius(a, Fq2.k() / 2); }

// F_p-basis of the trace-zero line {c : c + c^q = 0} in F_{q^2}.
std::vector<felt> trace_zero_basis(const Field& Fq2) {
  std::set<felt> span = {0};
  std::vector<felt> basis;
  for (felt c = 1; c < Fq2.q(); ++c) {
    if (Fq2.add(c, conj_q(Fq2, c)) != 0) continue;
    if (span.count(c)) continue;
    basis.push_back(c);
    std::set<felt> next = span;
    for (felt s : span) {
      felt m = c;
      for (uint32_t l = 1; l < Fq2.p(); ++l) {
        next.insert(Fq2.add(s, m));
        m = Fq2.add(m, c);
      }
    }
    span = std::move(next);
  }
  return basis;
}

void check_form(const std::vector<Mat>& gens, const Mat& gram, uint32_t frob) {
  for (const Mat& g : gens)
    mat_check(frob == 0 ? preserves_bilinear(g, gram) : preserves_hermitian(g, gram, frob),
              "generator preserves the form");
}

void check_det_one(const std::vector<Mat>& gens) {
  for (const Mat& g : gens) mat_check(mat_det(g) == 1, "generator has determinant one");
}

}  // namespace

Mat hermitian_gram(const Field& F, uint32_t n) {
  Mat j = mat_zero(F, n);
  for (uint32_t i = 0; i < n; ++i) j.at(i, n - 1 - i) = 1;
  return j;
}

Mat symplectic_gram(const Field& F) {
  Mat j = mat_zero(F, 4);
  j.at(0, 3) = 1;
  j.at(1, 2) = 1;
  j.at(2, 1) = F.neg(1);
  j.at(3, 0) = F.neg(1);
  return j;
}

bool preserves_hermitian(const Mat& g, const Mat& gram, uint32_t frob) {
  return mat_mul(mat_mul(mat_conj_transpose(g, frob), gram), g) == gram;
}

bool preserves_bilinear(const Mat& g, const Mat& gram) {
  return mat_mul(mat_mul(mat_transpose(g), gram), g) == gram;
}

std::vector<Mat> sl_generators(const Field& F, uint32_t n) {
  mat_check(n >= 2 && n <= 4, "SL dimension in [2,4]");
  std::vector<Mat> gens;
  for (felt b : prime_field_basis(F)) {
    Mat u = mat_identity(F, n);
    u.at(0, 1) = b;
    Mat l = mat_identity(F, n);
    l.at(1, 0) = b;
    gens.push_back(u);
    gens.push_back(l);
  }
  // n-cycle permutation matrix with one sign flipped so the determinant is 1.
  Mat c = mat_zero(F, n);
  for (uint32_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = 1;
  c.at(0, n - 1) = (n % 2 == 0) ? F.neg(1) : 1;
  gens.push_back(c);
  check_det_one(gens);
  return gens;
}

std::vector<Mat> gl_generators(const Field& F, uint32_t n) {
  std::vector<Mat> gens = sl_generators(F, n);
  Mat d = mat_identity(F, n);
  d.at(0, 0) = F.generator();
  gens.push_back(d);
  return gens;
}

std::vector<Mat> su_generators(const Field& Fq2, uint32_t n) {
  mat_check(n == 3 || n == 4, "SU dimension 3 or 4");
  const uint32_t q = unitary_q(Fq2);
  const uint32_t frob = Fq2.k() / 2;
  const Mat j = hermitian_gram(Fq2, n);
  std::vector<Mat> gens;

  if (n == 3) {
    // Upper unitary transvections [[1,a,b],[0,1,-a^q],[0,0,1]] subject to
    // b + b^q + a^(q+1) = 0; b is the least solution for each basis a.
    auto transvection = [&](felt a) {
      const felt norm_a = Fq2.mul(a, conj_q(Fq2, a));
      for (felt b = 0; b < Fq2.q(); ++b) {
        if (Fq2.add(Fq2.add(b, conj_q(Fq2, b)), norm_a) != 0) continue;
        Mat u = mat_identity(Fq2, 3);
        u.at(0, 1) = a;
        u.at(0, 2) = b;
        u.at(1, 2) = Fq2.neg(conj_q(Fq2, a));
        return u;
      }
      throw std::logic_error("unitary transvection: no b with trace(b) = -N(a)");
    };
    for (felt a : prime_field_basis(Fq2)) gens.push_back(transvection(a));
    for (felt c : trace_zero_basis(Fq2)) {
      Mat u = mat_identity(Fq2, 3);
      u.at(0, 2) = c;
      gens.push_back(u);
    }
    // Torus diag(a, a^(q-1), a^-q), a a field generator.
    const felt a = Fq2.generator();
    Mat t = mat_identity(Fq2, 3);
    t.at(0, 0) = a;
    t.at(1, 1) = Fq2.pow(a, q - 1);
    t.at(2, 2) = Fq2.inv(Fq2.pow(a, q));
    gens.push_back(t);
  } else {
    // Long roots I + c E14, I + c E23 (c of trace zero), short roots
    // I + t E12 - t^q E34 and I + t E13 - t^q E24, and a rank-2 torus.
    for (felt c : trace_zero_basis(Fq2)) {
      Mat u = mat_identity(Fq2, 4);
      u.at(0, 3) = c;
      gens.push_back(u);
      Mat v = mat_identity(Fq2, 4);
      v.at(1, 2) = c;
      gens.push_back(v);
    }
    for (felt t : prime_field_basis(Fq2)) {
      Mat u = mat_identity(Fq2, 4);
      u.at(0, 1) = t;
      u.at(2, 3) = Fq2.neg(conj_q(Fq2, t));
      gens.push_back(u);
      Mat v = mat_identity(Fq2, 4);
      v.at(0, 2) = t;
      v.at(1, 3) = Fq2.neg(conj_q(Fq2, t));
      gens.push_back(v);
    }
    const felt a = Fq2.generator();
    Mat t = mat_identity(Fq2, 4);
    t.at(0, 0) = a;
    t.at(1, 1) = Fq2.inv(a);
    t.at(2, 2) = Fq2.pow(a, q);
    t.at(3, 3) = Fq2.inv(Fq2.pow(a, q));
    gens.push_back(t);
  }

  // Opposite-triangle copies via conjugation by the gram matrix (an isometry
  // with j^2 = 1, so conjugation keeps determinant 1).
  const size_t upper = gens.size();
  for (size_t i = 0; i < upper; ++i) gens.push_back(mat_mul(mat_mul(j, gens[i]), j));

  check_det_one(gens);
  check_form(gens, j, frob);
  return gens;
}

std::vector<Mat> gu_generators(const Field& Fq2, uint32_t n) {
  std::vector<Mat> gens = su_generators(Fq2, n);
  const uint32_t q = unitary_q(Fq2);
  // Dilation diag(a, 1, .., a^-q): determinant a^(1-q) of order q + 1, so it
  // generates GU over SU.
  const felt a = Fq2.generator();
  Mat d = mat_identity(Fq2, n);
  d.at(0, 0) = a;
  d.at(n - 1, n - 1) = Fq2.inv(Fq2.pow(a, q));
  mat_check(preserves_hermitian(d, hermitian_gram(Fq2, n), Fq2.k() / 2),
            "dilation preserves the form");
  gens.push_back(d);
  return gens;
}

std::vector<Mat> sp4_generators(const Field& F) {
  const Mat j = symplectic_gram(F);
  std::vector<std::vector<felt>> dirs;
  for (uint32_t i = 0; i < 4; ++i) {
    std::vector<felt> e(4, 0);
    e[i] = 1;
    dirs.push_back(e);
  }
  for (uint32_t i = 0; i < 4; ++i)
    for (uint32_t l = i + 1; l < 4; ++l) {
      std::vector<felt> e(4, 0);
      e[i] = 1;
      e[l] = 1;
      dirs.push_back(e);
    }
  std::vector<Mat> gens;
  for (const auto& v : dirs) {
    const std::vector<felt> jv = mat_apply(j, v);
    for (felt lam : prime_field_basis(F)) {
      // Symplectic transvection x -> x + lam <x,v> v.
      Mat t = mat_identity(F, 4);
      for (uint32_t r = 0; r < 4; ++r)
        for (uint32_t c = 0; c < 4; ++c)
          t.at(r, c) = F.add(t.at(r, c), F.mul(lam, F.mul(v[r], jv[c])));
      gens.push_back(t);
    }
  }
  check_det_one(gens);
  check_form(gens, j, 0);
  return gens;
}

uint64_t gl_order(uint32_t n, uint64_t q) {
  uint64_t o = 1, qn = 1;
  for (uint32_t i = 0; i < n; ++i) qn *= q;
  uint64_t qi = 1;
  for (uint32_t i = 0; i < n; ++i) {
    o *= qn - qi;
    qi *= q;
  }
  return o;
}

uint64_t sl_order(uint32_t n, uint64_t q) { return gl_order(n, q) / (q - 1); }

uint64_t gu_order(uint32_t n, uint64_t q) {
  uint64_t o = 1;
  for (uint32_t i = 0; i < n * (n - 1) / 2; ++i) o *= q;
  uint64_t qi = 1;
  for (uint32_t i = 1; i <= n; ++i) {
    qi *= q;
    o *= (i % 2 == 0) ? qi - 1 : qi + 1;
  }
  return o;
}

uint64_t su_order(uint32_t n, uint64_t q) { return gu_order(n, q) / (q + 1); }

uint64_t sp4_order(uint64_t q) { return q * q * q * q * (q * q - 1) * (q * q * q * q - 1); }

uint64_t psl_order(uint32_t n, uint64_t q) { return sl_order(n, q) / std::gcd<uint64_t>(n, q - 1); }
uint64_t psu_order(uint32_t n, uint64_t q) { return su_order(n, q) / std::gcd<uint64_t>(n, q + 1); }
uint64_t pgl_order(uint32_t n, uint64_t q) { return gl_order(n, q) / (q - 1); }
uint64_t pgu_order(uint32_t n, uint64_t q) { return gu_order(n, q) / (q + 1); }
uint64_t psp4_order(uint64_t q) { return sp4_order(q) / std::gcd<uint64_t>(2, q - 1); }

uint64_t PointTable::pack(const std::vector<felt>& v) const {
  uint32_t bits = 1;
  while ((1u << bits) < F->q()) ++bits;
  mat_check(static_cast<uint64_t>(bits) * n <= 63, "packed point fits a word");
  uint64_t key = 0;
  for (uint32_t i = 0; i < n; ++i) key = (key << bits) | v[i];
  return key;
}

std::vector<felt> PointTable::normalize(std::vector<felt> v) const {
  if (!projective) return v;
  for (uint32_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    const felt s = F->inv(v[i]);
    for (uint32_t l = i; l < n; ++l) v[l] = F->mul(s, v[l]);
    return v;
  }
  throw std::domain_error("projective point: zero vector");
}

uint32_t PointTable::find(const std::vector<felt>& v) const {
  const auto it = index.find(pack(normalize(v)));
  mat_check(it != index.end(), "image vector lies in the point table");
  return it->second;
}

namespace {

PointTable enumerate_points(const Field& F, uint32_t n, bool projective) {
  PointTable tab;
  tab.F = &F;
  tab.n = n;
  tab.projective = projective;
  std::vector<felt> v(n, 0);
  // Odometer over all q^n vectors, coordinate 0 most significant, giving a
  // lexicographic listing.
  while (true) {
    bool keep = false;
    if (projective) {
      for (uint32_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        keep = (v[i] == 1);
        break;
      }
    } else {
      for (uint32_t i = 0; i < n; ++i) keep = keep || v[i] != 0;
    }
    if (keep) {
      tab.index.emplace(tab.pack(v), static_cast<uint32_t>(tab.pts.size()));
      tab.pts.push_back(v);
    }
    uint32_t i = n;
    while (i > 0 && ++v[i - 1] == F.q()) v[--i] = 0;
    if (i == 0) break;
  }
  return tab;
}

}  // namespace

PointTable projective_points(const Field& F, uint32_t n) {
  PointTable tab = enumerate_points(F, n, true);
  uint64_t expect = 0, qi = 1;
  for (uint32_t i = 0; i < n; ++i) {
    expect += qi;
    qi *= F.q();
  }
  mat_check(tab.pts.size() == expect, "projective point count is (q^n-1)/(q-1)");
  return tab;
}

PointTable vector_points(const Field& F, uint32_t n) {
  PointTable tab = enumerate_points(F, n, false);
  uint64_t expect = 1;
  for (uint32_t i = 0; i < n; ++i) expect *= F.q();
  mat_check(tab.pts.size() == expect - 1, "vector point count is q^n - 1");
  return tab;
}

Perm action_perm(const PointTable& tab, const Mat& g) {
  std::vector<uint16_t> images(tab.size());
  for (uint32_t i = 0; i < tab.size(); ++i)
    images[i] = static_cast<uint16_t>(tab.find(mat_apply(g, tab.pts[i])));
  return Perm::from_images(std::move(images));
}

Perm frobenius_perm(const PointTable& tab, uint32_t i) {
  mat_check(tab.projective, "field automorphisms act on projective tables");
  std::vector<uint16_t> images(tab.size());
  for (uint32_t pt = 0; pt < tab.size(); ++pt) {
    std::vector<felt> w = tab.pts[pt];
    for (felt& c : w) c = tab.F->frobenius(c, i);
    images[pt] = static_cast<uint16_t>(tab.find(w));
  }
  return Perm::from_images(std::move(images));
}

Mat unipotent_rep(const Field& F, uint32_t n, const std::vector<uint32_t>& blocks) {
  uint32_t total = 0;
  for (uint32_t b : blocks) total += b;
  mat_check(total == n, "Jordan block sizes sum to the dimension");
  Mat m = mat_identity(F, n);
  uint32_t off = 0;
  for (uint32_t b : blocks) {
    for (uint32_t i = 0; i + 1 < b; ++i) m.at(off + i, off + i + 1) = 1;
    off += b;
  }
  return m;
}

Mat sl2_split_order3(const Field& F) {
  mat_check((F.q() - 1) % 3 == 0, "split order-3 torus needs q = 1 mod 3");
  const felt w = F.pow(F.generator(), (F.q() - 1) / 3);
  Mat m = mat_zero(F, 2);
  m.at(0, 0) = w;
  m.at(1, 1) = F.mul(w, w);
  return m;
}

Mat sl2_irreducible_order3(const Field& F) {
  Mat m = mat_zero(F, 2);
  m.at(0, 1) = F.neg(1);
  m.at(1, 0) = 1;
  m.at(1, 1) = F.neg(1);
  mat_check(mat_pow(m, 3) == mat_identity(F, 2), "rotation has order three");
  return m;
}

Mat sl3_split_order3(const Field& F) {
  mat_check((F.q() - 1) % 3 == 0, "split order-3 torus needs q = 1 mod 3");
  const felt w = F.pow(F.generator(), (F.q() - 1) / 3);
  Mat m = mat_identity(F, 3);
  m.at(1, 1) = w;
  m.at(2, 2) = F.mul(w, w);
  return m;
}

Mat sl3_partially_split_order3(const Field& F) {
  Mat m = mat_identity(F, 3);
  m.at(1, 1) = 0;
  m.at(1, 2) = F.neg(1);
  m.at(2, 1) = 1;
  m.at(2, 2) = F.neg(1);
  mat_check(mat_pow(m, 3) == mat_identity(F, 3), "block rotation has order three");
  return m;
}

Mat gl3_irreducible_order3(const Field& F) {
  mat_check((F.q() - 1) % 3 == 0, "irreducible projective order 3 needs cube classes");
  felt c = 0;
  for (felt x = 2; x < F.q(); ++x)
    if (F.pow(x, (F.q() - 1) / 3) != 1) {
      c = x;
      break;
    }
  mat_check(c != 0, "a non-cube exists when 3 divides q - 1");
  Mat m = mat_zero(F, 3);
  m.at(0, 2) = c;
  m.at(1, 0) = 1;
  m.at(2, 1) = 1;
  // m^3 = cI, so the projective image has order 3 and char poly t^3 - c is
  // irreducible; mat_check the scalar cube.
  mat_check(mat_pow(m, 3) == mat_scalar(F, 3, c), "companion cube is scalar");
  return m;
}

Mat hermitian_basis_change(const Field& Fq2) {
  const felt minus1 = Fq2.neg(1);
  auto norm = [&](felt x) { return Fq2.mul(x, conj_q(Fq2, x)); };
  felt w = 0;
  for (felt x = 1; x < Fq2.q(); ++x)
    if (norm(x) == minus1) {
      w = x;
      break;
    }
  mat_check(w != 0, "norm onto the subfield is surjective");
  felt wp = 0, pairing = 0;
  for (felt x = 1; x < Fq2.q(); ++x) {
    if (x == w || norm(x) != minus1) continue;
    const felt pr = Fq2.add(1, Fq2.mul(conj_q(Fq2, w), x));
    if (pr != 0) {
      wp = x;
      pairing = pr;
      break;
    }
  }
  mat_check(pairing != 0, "a second isotropic vector pairs nontrivially");
  const felt c = Fq2.inv(pairing);
  // Columns: v1 = (1, w, 0) isotropic, v2 = e3 unit, v3 = c (1, wp, 0) with
  // <v1, v3> = 1; gram of the columns under the identity form is the
  // antidiagonal gram matrix.
  Mat s = mat_zero(Fq2, 3);
  s.at(0, 0) = 1;
  s.at(1, 0) = w;
  s.at(0, 2) = c;
  s.at(1, 2) = Fq2.mul(c, wp);
  s.at(2, 1) = 1;
  const Mat gram = mat_mul(mat_conj_transpose(s, Fq2.k() / 2), s);
  mat_check(gram == hermitian_gram(Fq2, 3), "basis change carries identity form to gram");
  return s;
}

Mat su3_split_order3(const Field& Fq2) {
  const uint32_t q = unitary_q(Fq2);
  mat_check((q + 1) % 3 == 0, "split unitary order-3 torus needs q = 2 mod 3");
  const felt w = Fq2.pow(Fq2.generator(), (Fq2.q() - 1) / 3);
  Mat d = mat_identity(Fq2, 3);
  d.at(1, 1) = w;
  d.at(2, 2) = Fq2.mul(w, w);
  const Mat s = hermitian_basis_change(Fq2);
  Mat m = mat_mul(mat_mul(mat_inverse(s), d), s);
  mat_check(preserves_hermitian(m, hermitian_gram(Fq2, 3), Fq2.k() / 2) && mat_det(m) == 1,
            "conjugated torus element is special unitary");
  return m;
}

Mat su3_partially_split_order3(const Field& Fq2) {
  const uint32_t q = unitary_q(Fq2);
  mat_check((q - 1) % 3 == 0, "partially split unitary torus needs q = 1 mod 3");
  // Order-3 element of the subfield F_q.
  const felt a = Fq2.pow(Fq2.generator(), (Fq2.q() - 1) / 3);
  mat_check(Fq2.frobenius(a, Fq2.k() / 2) == a, "cube roots of unity lie in the subfield");
  Mat m = mat_identity(Fq2, 3);
  m.at(0, 0) = a;
  m.at(2, 2) = Fq2.mul(a, a);
  mat_check(preserves_hermitian(m, hermitian_gram(Fq2, 3), Fq2.k() / 2) && mat_det(m) == 1,
            "partially split representative is special unitary");
  return m;
}

Mat gu3_irreducible_order3(const Field& Fq2) {
  const uint32_t q = unitary_q(Fq2);
  mat_check((q + 1) % 3 == 0, "irreducible outer class needs 3 | q + 1");
  const felt d = Fq2.pow(Fq2.generator(), q - 1);  // generates the norm-one circle
  Mat m = mat_zero(Fq2, 3);
  m.at(0, 2) = d;
  m.at(1, 0) = 1;
  m.at(2, 1) = 1;
  const Mat s = hermitian_basis_change(Fq2);
  Mat n = mat_mul(mat_mul(mat_inverse(s), m), s);
  mat_check(preserves_hermitian(n, hermitian_gram(Fq2, 3), Fq2.k() / 2),
            "conjugated monomial element is unitary");
  mat_check(mat_pow(n, 3) == mat_scalar(Fq2, 3, d), "monomial cube is the scalar d");
  return n;
}

Mat sp4_double_transvection(const Field& F) {
  mat_check(F.p() == 3, "double transvection of order three lives in characteristic 3");
  Mat m = mat_identity(F, 4);
  m.at(0, 3) = F.neg(1);
  m.at(1, 2) = F.neg(1);
  mat_check(preserves_bilinear(m, symplectic_gram(F)), "product of transvections is symplectic");
  mat_check(mat_pow(m, 3) == mat_identity(F, 4), "double transvection has order three");
  const Mat d = mat_sub(m, mat_identity(F, 4));
  mat_check(mat_rank(d) == 2 && mat_rank(mat_mul(d, d)) == 0, "Jordan type is [2,2]");
  return m;
}

}  // namespace o3
