#include "o3/chain.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "o3/kernels.hpp"

namespace o3 {

void StabChain::add_level(uint16_t base_point) {
  ChainLevel lvl;
  lvl.base = base_point;
  lvl.stride = degree_ + 1;
  lvl.pos_of_point.assign(degree_, -1);
  levels_.push_back(std::move(lvl));
}

void StabChain::finish_level(size_t l) {
  ChainLevel& lvl = levels_[l];
  const uint32_t n = degree_;

  // BFS with full representative permutations, generators in list order.
  std::vector<uint16_t> found{lvl.base};
  std::vector<Perm> rep_of;
  rep_of.push_back(Perm(n));
  std::vector<int32_t> pos(n, -1);
  pos[lvl.base] = 0;
  for (size_t head = 0; head < found.size(); ++head) {
    uint16_t p = found[head];
    for (const Perm& g : lvl.gens) {
      uint16_t r = g[p];
      if (pos[r] >= 0) continue;
      pos[r] = (int32_t)found.size();
      found.push_back(r);
      rep_of.push_back(compose(rep_of[pos[p]], g));
    }
  }

  // Sort the orbit ascending and lay out flat transversals in that order.
  std::sort(found.begin(), found.end());
  lvl.orbit = found;
  std::fill(lvl.pos_of_point.begin(), lvl.pos_of_point.end(), -1);
  lvl.fwd.assign(found.size() * lvl.stride, 0);
  lvl.inv.assign(found.size() * lvl.stride, 0);
  for (size_t j = 0; j < found.size(); ++j) {
    lvl.pos_of_point[found[j]] = (int32_t)j;
    const Perm& fwd = rep_of[pos[found[j]]];
    Perm inv = fwd.inverse();
    std::copy(fwd.data(), fwd.data() + n, lvl.fwd.begin() + j * lvl.stride);
    std::copy(inv.data(), inv.data() + n, lvl.inv.begin() + j * lvl.stride);
  }
}

std::pair<Perm, size_t> StabChain::sift(Perm g, size_t from_level) const {
  Perm tmp(degree_);
  for (size_t l = from_level; l < levels_.size(); ++l) {
    const ChainLevel& lvl = levels_[l];
    uint16_t p = g[lvl.base];
    if (p == lvl.base) continue;
    int32_t pos = lvl.pos_of_point[p];
    if (pos < 0) return {std::move(g), l};
    kernels::active().compose(tmp.data(), g.data(), lvl.inv_at((size_t)pos), degree_);
    std::swap(g, tmp);
  }
  return {std::move(g), levels_.size()};
}

void StabChain::complete(size_t l) {
  Perm u(degree_), s(degree_);
  for (size_t j = 0; j < levels_[l].orbit.size(); ++j) {
    for (size_t gi = 0; gi < levels_[l].gens.size(); ++gi) {
      // Deeper-level insertions may reallocate levels_, so re-fetch and copy.
      const Perm g = levels_[l].gens[gi];
      const ChainLevel& lvl = levels_[l];
      uint16_t image = g[lvl.orbit[j]];
      int32_t tpos = lvl.pos_of_point[image];
      if (tpos < 0) throw std::logic_error("orbit not closed during completion");
      // Schreier generator u_j * g * u_image^-1; it fixes b_0..b_l.
      kernels::active().compose(u.data(), lvl.fwd_at(j), g.data(), degree_);
      kernels::active().compose(s.data(), u.data(), lvl.inv_at((size_t)tpos), degree_);
      if (s.is_identity()) continue;

      auto [residue, stuck] = sift(s, l + 1);
      if (residue.is_identity()) continue;

      if (stuck == levels_.size()) {
        add_level((uint16_t)residue.smallest_moved());
        stuck = levels_.size() - 1;
      }
      // The residue fixes b_0..b_{stuck-1}, so it belongs at all these levels.
      for (size_t i = l + 1; i <= stuck; ++i) {
        levels_[i].gens.push_back(residue);
        finish_level(i);
      }
      for (size_t i = stuck; i >= l + 1; --i) complete(i);
    }
  }
}

StabChain StabChain::build(uint32_t degree, const std::vector<Perm>& gens) {
  if (degree > 65535) throw std::invalid_argument("degree exceeds 65535");
  StabChain c;
  c.degree_ = degree;
  for (const Perm& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity()) c.gens_.push_back(g);
  }
  if (c.gens_.empty()) return c;  // trivial group, no levels

  uint32_t b0 = degree;
  for (const Perm& g : c.gens_) b0 = std::min(b0, g.smallest_moved());
  c.add_level((uint16_t)b0);
  c.levels_[0].gens = c.gens_;
  c.finish_level(0);
  c.complete(0);
  return c;
}

StabChain StabChain::assemble(uint32_t degree, std::vector<Perm> gens,
                              const std::vector<uint16_t>& base,
                              const std::vector<std::vector<Perm>>& level_gens) {
  if (base.size() != level_gens.size())
    throw std::invalid_argument("base/levels size mismatch");
  StabChain c;
  c.degree_ = degree;
  c.gens_ = std::move(gens);
  for (size_t l = 0; l < base.size(); ++l) {
    c.add_level(base[l]);
    c.levels_[l].gens = level_gens[l];
    c.finish_level(l);
  }
  return c;
}

uint64_t StabChain::order() const {
  uint64_t n = 1;
  for (const ChainLevel& lvl : levels_) {
    uint64_t sz = lvl.orbit.size();
    if (n > UINT64_MAX / sz) throw std::overflow_error("group order overflow");
    n *= sz;
  }
  return n;
}

bool StabChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, level] = sift(g);
  (void)level;
  return residue.is_identity();
}

std::vector<uint16_t> StabChain::base_points() const {
  std::vector<uint16_t> b;
  for (const ChainLevel& lvl : levels_) b.push_back(lvl.base);
  return b;
}

bool StabChain::verify() const {
  const uint32_t n = degree_;
  Perm u(n), s(n);
  for (size_t l = 0; l < levels_.size(); ++l) {
    const ChainLevel& lvl = levels_[l];
    if (lvl.pos_of_point[lvl.base] < 0) return false;
    for (const Perm& g : lvl.gens)
      for (size_t i = 0; i < l; ++i)
        if (g[levels_[i].base] != levels_[i].base) return false;
    for (size_t j = 0; j < lvl.orbit.size(); ++j) {
      uint16_t p = lvl.orbit[j];
      if (lvl.fwd_at(j)[lvl.base] != p) return false;
      if (lvl.inv_at(j)[p] != lvl.base) return false;
      for (const Perm& g : lvl.gens) {
        int32_t tpos = lvl.pos_of_point[g[p]];
        if (tpos < 0) return false;  // orbit not closed
        kernels::active().compose(u.data(), lvl.fwd_at(j), g.data(), n);
        kernels::active().compose(s.data(), u.data(), lvl.inv_at((size_t)tpos), n);
        auto [residue, stuck] = sift(s, l + 1);
        (void)stuck;
        if (!residue.is_identity()) return false;
      }
    }
  }
  for (const Perm& g : gens_)
    if (!contains(g)) return false;
  return true;
}

}  // namespace o3
