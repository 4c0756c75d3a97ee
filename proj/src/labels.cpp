#include <algorithm>
#include <stdexcept>

#include "o3/lie.hpp"

namespace o3 {

std::string ClassDescriptor::label() const {
  std::string s;
  if (outer) s += "outer ";
  switch (kind) {
    case ClassKind::Unipotent:
      for (size_t i = 0; i < jordan.size(); ++i) {
        if (i) s += "+";
        s += "J" + std::to_string(jordan[i]);
      }
      break;
    case ClassKind::Split:
      s += "split";
      break;
    case ClassKind::PartiallySplit:
      s += "partially-split";
      break;
    case ClassKind::Irreducible:
      s += "irreducible";
      break;
    case ClassKind::NonRegular:
      s += "non-regular";
      break;
    case ClassKind::FieldAuto:
      s += "field-automorphism";
      break;
    case ClassKind::CycleType:
      s += "3^" + std::to_string(cycles3) + " 1^" + std::to_string(fixed);
      break;
    case ClassKind::Named:
      s += name;
      break;
  }
  return s;
}

bool ClassDescriptor::operator==(const ClassDescriptor& o) const {
  return kind == o.kind && jordan == o.jordan && cycles3 == o.cycles3 &&
         fixed == o.fixed && name == o.name && outer == o.outer;
}

Mat lift_to_matrix(const GroupHandle& h, const Perm& g) {
  if (!h.lift)
    throw std::invalid_argument("group has no matrix lift: " + h.meta.canonical);
  const PointTable& tab = h.lift->points;
  const Field& F = *h.lift->field;
  const uint32_t n = tab.n;
  Mat m = mat_zero(F, n);

  if (h.lift->vector_action) {
    // Columns are read off directly: the image of the i-th unit vector is
    // the i-th column.
    for (uint32_t i = 0; i < n; ++i) {
      std::vector<felt> e(n, 0);
      e[i] = 1;
      const std::vector<felt>& w = tab.pts[g[tab.find(e)]];
      for (uint32_t r = 0; r < n; ++r) m.at(r, i) = w[r];
    }
  } else {
    // Projectively the basis images only give the columns up to scalars;
    // the image of the all-ones point pins them: solve V lam = z.
    std::vector<std::vector<felt>> w(n);
    Mat v = mat_zero(F, n);
    for (uint32_t i = 0; i < n; ++i) {
      std::vector<felt> e(n, 0);
      e[i] = 1;
      w[i] = tab.pts[g[tab.find(e)]];
      for (uint32_t r = 0; r < n; ++r) v.at(r, i) = w[i][r];
    }
    const std::vector<felt> z = tab.pts[g[tab.find(std::vector<felt>(n, 1))]];
    const std::vector<felt> lam = mat_apply(mat_inverse(v), z);
    for (uint32_t i = 0; i < n; ++i) {
      mat_check(lam[i] != 0, "projective lift scalar is nonzero");
      for (uint32_t r = 0; r < n; ++r) m.at(r, i) = F.mul(lam[i], w[i][r]);
    }
  }
  mat_check(action_perm(tab, m) == g, "matrix lift reproduces the permutation");
  return m;
}

namespace {

// Jordan type of u with u^3 = 1 from the ranks of (u-1) and (u-1)^2.
std::vector<uint32_t> jordan_type_order3(const Mat& u) {
  const Field& F = *u.F;
  const Mat d = mat_sub(u, mat_identity(F, u.n));
  const uint32_t r1 = mat_rank(d);
  const uint32_t r2 = mat_rank(mat_mul(d, d));
  mat_check(r1 >= 2 * r2 && u.n + r2 >= 2 * r1, "rank profile of a cubic unipotent");
  const uint32_t j3 = r2;
  const uint32_t j2 = r1 - 2 * r2;
  const uint32_t j1 = u.n + r2 - 2 * r1;
  std::vector<uint32_t> blocks;
  blocks.insert(blocks.end(), j3, 3);
  blocks.insert(blocks.end(), j2, 2);
  blocks.insert(blocks.end(), j1, 1);
  return blocks;
}

bool unitary_family(Family f) {
  return f == Family::PSU3 || f == Family::PSU4 || f == Family::PGU3;
}

ClassDescriptor describe_matrix_class(const GroupHandle& h, const Perm& rep) {
  const Mat m = lift_to_matrix(h, rep);
  const Field& F = *m.F;
  ClassDescriptor d;
  if ((h.meta.family == Family::PGL3 || h.meta.family == Family::PGU3) && h.socle)
    d.outer = !h.socle->contains(rep);

  if (F.p() == 3) {
    // Order 3 in characteristic 3: the lift cubes to a scalar, and cubing
    // is a bijection on the multiplicative group (3 does not divide q-1),
    // so a scalar adjustment makes it unipotent.  lam^(q/3) cubes to
    // lam^(q-1) * lam = lam.
    felt lam = 0;
    mat_check(mat_is_scalar(mat_pow(m, 3), &lam), "cube of an order-3 lift is scalar");
    const felt mu = F.pow(lam, F.q() / 3);
    mat_check(F.pow(mu, 3) == lam, "cube root of the lift scalar");
    const Mat u = mat_scale(F.inv(mu), m);
    mat_check(mat_pow(u, 3) == mat_identity(F, u.n), "adjusted lift has order 3");
    d.kind = ClassKind::Unipotent;
    d.jordan = jordan_type_order3(u);
    return d;
  }

  // Away from the characteristic the lift is semisimple (its cube is a
  // scalar, and t^3 - lam is separable); classify the root pattern of the
  // characteristic polynomial.  Scalars rescale all roots together, so the
  // pattern does not depend on the chosen lift.
  const std::vector<felt> cp = char_poly(m);
  std::vector<felt> roots;
  bool repeated = false;
  for (uint64_t a = 0; a < F.q(); ++a) {
    const uint32_t mult = poly_root_multiplicity(F, cp, static_cast<felt>(a));
    if (mult >= 2) repeated = true;
    if (mult >= 1) roots.push_back(static_cast<felt>(a));
  }
  if (repeated) {
    d.kind = ClassKind::NonRegular;
    return d;
  }
  if (roots.empty()) {
    d.kind = ClassKind::Irreducible;
    return d;
  }
  if (unitary_family(h.meta.family)) {
    // Cube roots of unity lie in GF(q^2) whenever 3 is invertible, so a
    // single rational root would force all three rational: 3 or 0 roots.
    mat_check(roots.size() == m.n, "unitary semisimple root count");
    // Split inside the unitary group means the eigenvalue ratios lie in the
    // norm-1 circle mu_(q+1).
    const uint64_t qq = static_cast<uint64_t>(h.meta.q) + 1;
    bool circle = true;
    for (size_t i = 0; i < roots.size() && circle; ++i)
      for (size_t j = i + 1; j < roots.size() && circle; ++j)
        circle = F.pow(F.mul(roots[i], F.inv(roots[j])), qq) == 1;
    d.kind = circle ? ClassKind::Split : ClassKind::PartiallySplit;
    return d;
  }
  if (roots.size() == m.n) {
    d.kind = ClassKind::Split;
    return d;
  }
  mat_check(m.n == 3 && roots.size() == 1, "linear semisimple root pattern");
  mat_check(h.meta.q % 3 == 2, "one rational root needs no cube roots of unity");
  d.kind = ClassKind::PartiallySplit;
  return d;
}

}  // namespace

ClassDescriptor describe_class(const GroupHandle& h, const Perm& rep) {
  const Family fam = h.meta.family;
  ClassDescriptor d;

  if (fam == Family::Alt || fam == Family::Sym) {
    d.kind = ClassKind::CycleType;
    for (uint32_t len : rep.cycle_lengths()) {
      if (len == 3)
        ++d.cycles3;
      else if (len == 1)
        ++d.fixed;
      else
        throw std::invalid_argument("representative is not of order 3");
    }
    return d;
  }

  if (fam == Family::PGammaL2) {
    if (h.socle && !h.socle->contains(rep)) {
      d.kind = ClassKind::FieldAuto;
      d.outer = true;
      return d;
    }
    // Inner classes are labeled by congruence, as for PSL2.
    const uint32_t q = h.meta.q;
    if (q % 3 == 0) {
      d.kind = ClassKind::Unipotent;
      d.jordan = {2};
    } else {
      d.kind = (q % 3 == 1) ? ClassKind::Split : ClassKind::Irreducible;
    }
    return d;
  }

  if (fam == Family::PSL2) {
    const uint32_t q = h.meta.q;
    if (q % 3 == 0) {
      d.kind = ClassKind::Unipotent;
      d.jordan = {2};
    } else {
      d.kind = (q % 3 == 1) ? ClassKind::Split : ClassKind::Irreducible;
    }
    return d;
  }

  if (h.lift) return describe_matrix_class(h, rep);
  throw std::invalid_argument("no symbolic description for " + h.meta.canonical);
}

}  // namespace o3
