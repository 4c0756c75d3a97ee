#include "o3/search.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <unordered_set>

#include "o3/kernels.hpp"

namespace o3 {

// ------------------------------------------------------------ ElementStream

ElementStream::ElementStream(const StabChain& c) : c_(&c) {
  size_t m = c.num_levels();
  digits_.assign(m, 0);
  prefix_.assign(m + 1, Perm(c.degree()));
  size_ = c.order();
  rebuild_from(m == 0 ? 0 : m - 1);
}

void ElementStream::rebuild_from(size_t level) {
  size_t m = digits_.size();
  if (m == 0) return;
  for (size_t l = level + 1; l-- > 0;) {
    const ChainLevel& lvl = c_->level(l);
    kernels::active().compose(prefix_[l].data(), prefix_[l + 1].data(),
                              lvl.fwd_at(digits_[l]), c_->degree());
  }
}

bool ElementStream::advance() {
  size_t m = digits_.size();
  size_t l = 0;
  while (l < m && digits_[l] + 1 == c_->level(l).orbit.size()) {
    digits_[l] = 0;
    ++l;
  }
  if (l == m) return false;
  ++digits_[l];
  ++idx_;
  rebuild_from(l);
  return true;
}

void ElementStream::seek(uint64_t idx) {
  size_t m = digits_.size();
  idx_ = idx;
  for (size_t l = 0; l < m; ++l) {
    uint64_t r = c_->level(l).orbit.size();
    digits_[l] = (uint32_t)(idx % r);
    idx /= r;
  }
  rebuild_from(m == 0 ? 0 : m - 1);
}

// --------------------------------------------------------------------- keys

KeySpec key_spec(const StabChain& c) {
  KeySpec ks;
  ks.degree = c.degree();
  ks.levels = (uint32_t)c.num_levels();
  uint32_t maxpoint = c.degree() > 1 ? c.degree() - 1 : 1;
  ks.bits = std::bit_width(maxpoint);
  ks.packed = ks.levels * ks.bits <= 64;
  return ks;
}

uint64_t packed_key(const KeySpec& ks, const StabChain& c, const Perm& g) {
  uint64_t key = 0;
  for (uint32_t l = 0; l < ks.levels; ++l)
    key |= (uint64_t)g[c.level(l).base] << (l * ks.bits);
  return key;
}

std::vector<uint16_t> base_images(const StabChain& c, const Perm& g) {
  std::vector<uint16_t> v(c.num_levels());
  for (size_t l = 0; l < v.size(); ++l) v[l] = g[c.level(l).base];
  return v;
}

uint64_t pack_images(const KeySpec& ks, const uint16_t* imgs) {
  uint64_t key = 0;
  for (uint32_t l = 0; l < ks.levels; ++l)
    key |= (uint64_t)imgs[l] << (l * ks.bits);
  return key;
}

bool element_from_base_images(const StabChain& c, const uint16_t* imgs, Perm& out) {
  size_t m = c.num_levels();
  uint16_t v[64];
  uint32_t digits[64];
  if (m > 64) throw std::logic_error("base length exceeds key limit");
  std::copy(imgs, imgs + m, v);
  for (size_t l = 0; l < m; ++l) {
    const ChainLevel& lvl = c.level(l);
    if (v[l] >= c.degree()) return false;
    int32_t pos = lvl.pos_of_point[v[l]];
    if (pos < 0) return false;
    digits[l] = (uint32_t)pos;
    const uint16_t* inv = lvl.inv_at((size_t)pos);
    for (size_t j = l + 1; j < m; ++j) v[j] = inv[v[j]];
  }
  Perm acc(c.degree());
  Perm tmp(c.degree());
  for (size_t l = m; l-- > 0;) {
    kernels::active().compose(tmp.data(), acc.data(),
                              c.level(l).fwd_at(digits[l]), c.degree());
    std::swap(acc, tmp);
  }
  out = std::move(acc);
  return true;
}

// ---------------------------------------------------------------- conjugacy

namespace {

struct WideHash {
  size_t operator()(const std::vector<uint16_t>& v) const {
    uint64_t h = 1469598103934665603ull;
    for (uint16_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return (size_t)h;
  }
};

}  // namespace

ConjOrbit conjugation_orbit(const StabChain& c, const Perm& x0, uint64_t cap) {
  KeySpec ks = key_spec(c);
  const std::vector<Perm>& gens = c.generators();
  std::vector<Perm> gen_invs;
  gen_invs.reserve(gens.size());
  for (const Perm& g : gens) gen_invs.push_back(g.inverse());
  size_t m = c.num_levels();

  ConjOrbit out;
  Perm x(c.degree());

  if (ks.packed) {
    std::unordered_set<uint64_t> seen;
    std::vector<uint64_t> queue;
    uint64_t k0 = packed_key(ks, c, x0);
    seen.insert(k0);
    queue.push_back(k0);
    for (size_t head = 0; head < queue.size(); ++head) {
      if (seen.size() > cap) {
        out.overflowed = true;
        out.size = seen.size();
        return out;
      }
      if (!element_from_packed_key(ks, c, queue[head], x))
        throw std::logic_error("conjugacy key lost chain membership");
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        const Perm& g = gens[gi];
        const Perm& gi_inv = gen_invs[gi];
        uint64_t key = 0;
        for (size_t l = 0; l < m; ++l) {
          uint16_t b = c.level(l).base;
          uint16_t img = g[x[gi_inv[b]]];  // b under g^-1 x g
          key |= (uint64_t)img << (l * ks.bits);
        }
        if (seen.insert(key).second) queue.push_back(key);
      }
    }
    out.size = seen.size();
    out.members.assign(seen.begin(), seen.end());
    std::sort(out.members.begin(), out.members.end());
    return out;
  }

  std::unordered_set<std::vector<uint16_t>, WideHash> seen;
  std::vector<std::vector<uint16_t>> queue;
  auto k0 = base_images(c, x0);
  seen.insert(k0);
  queue.push_back(k0);
  for (size_t head = 0; head < queue.size(); ++head) {
    if (seen.size() > cap) {
      out.overflowed = true;
      out.size = seen.size();
      return out;
    }
    if (!element_from_base_images(c, queue[head].data(), x))
      throw std::logic_error("conjugacy key lost chain membership");
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      const Perm& g = gens[gi];
      const Perm& gi_inv = gen_invs[gi];
      std::vector<uint16_t> key(m);
      for (size_t l = 0; l < m; ++l)
        key[l] = g[x[gi_inv[c.level(l).base]]];
      if (seen.insert(key).second) queue.push_back(std::move(key));
    }
  }
  out.size = seen.size();
  out.wide_members.assign(seen.begin(), seen.end());
  std::sort(out.wide_members.begin(), out.wide_members.end());
  return out;
}

// -------------------------------------------------------------------- scans

namespace {

// Runs visit(index, element) over [begin, end) of the stream.
template <typename Visit>
void scan_range(const StabChain& c, uint64_t begin, uint64_t end, Visit&& visit) {
  if (begin >= end) return;
  ElementStream s(c);
  s.seek(begin);
  for (uint64_t i = begin; i < end; ++i) {
    visit(i, s.current());
    if (i + 1 < end) s.advance();
  }
}

uint32_t effective_threads(const RunConfig& cfg, uint64_t work) {
  uint32_t t = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  if (t == 0) t = 1;
  if (work < 4096) t = 1;
  return (uint32_t)std::min<uint64_t>(t, work ? work : 1);
}

void require_within_cap(const StabChain& c, const RunConfig& cfg) {
  uint64_t n = c.order();
  if (n > cfg.cap)
    throw ResourceError("enumeration refused: group order " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cfg.cap) +
                        " (raise --cap to proceed)");
}

}  // namespace

ScanIndex build_scan_index(const StabChain& c, const RunConfig& cfg) {
  require_within_cap(c, cfg);
  uint64_t n = c.order();
  uint32_t nthreads = effective_threads(cfg, n);

  ScanIndex out;
  out.spec = key_spec(c);
  out.scanned = n;

  struct Local {
    std::vector<uint64_t> o3i, o3k, inv;
  };
  std::vector<Local> locals(nthreads);
  std::vector<std::thread> pool;
  for (uint32_t t = 0; t < nthreads; ++t) {
    uint64_t begin = n * t / nthreads;
    uint64_t end = n * (t + 1) / nthreads;
    Local& loc = locals[t];
    auto work = [&c, &loc, begin, end, spec = out.spec]() {
      scan_range(c, begin, end, [&](uint64_t i, const Perm& g) {
        if (g.has_order3()) {
          loc.o3i.push_back(i);
          if (spec.packed) loc.o3k.push_back(packed_key(spec, c, g));
        } else if (g.is_involution()) {
          loc.inv.push_back(i);
        }
      });
    };
    if (nthreads == 1) {
      work();
    } else {
      pool.emplace_back(work);
    }
  }
  for (auto& th : pool) th.join();
  for (Local& loc : locals) {
    out.order3_idx.insert(out.order3_idx.end(), loc.o3i.begin(), loc.o3i.end());
    out.order3_key.insert(out.order3_key.end(), loc.o3k.begin(), loc.o3k.end());
    out.involution_idx.insert(out.involution_idx.end(), loc.inv.begin(), loc.inv.end());
  }
  return out;
}

uint64_t count_matching(const StabChain& c, const RunConfig& cfg,
                        const std::function<bool(const Perm&)>& pred) {
  require_within_cap(c, cfg);
  uint64_t n = c.order();
  uint32_t nthreads = effective_threads(cfg, n);
  std::vector<uint64_t> counts(nthreads, 0);
  std::vector<std::thread> pool;
  for (uint32_t t = 0; t < nthreads; ++t) {
    uint64_t begin = n * t / nthreads, end = n * (t + 1) / nthreads;
    auto work = [&c, &pred, &counts, t, begin, end]() {
      uint64_t local = 0;
      scan_range(c, begin, end, [&](uint64_t, const Perm& g) {
        if (pred(g)) ++local;
      });
      counts[t] = local;
    };
    if (nthreads == 1)
      work();
    else
      pool.emplace_back(work);
  }
  for (auto& th : pool) th.join();
  uint64_t total = 0;
  for (uint64_t v : counts) total += v;
  return total;
}

std::optional<uint64_t> first_matching(const StabChain& c, const RunConfig& cfg,
                                       const std::function<bool(const Perm&)>& pred) {
  auto hits = all_matching(c, cfg, pred, 1);
  if (hits.empty()) return std::nullopt;
  return hits[0];
}

std::vector<uint64_t> all_matching(const StabChain& c, const RunConfig& cfg,
                                   const std::function<bool(const Perm&)>& pred,
                                   uint64_t max_results) {
  require_within_cap(c, cfg);
  uint64_t n = c.order();
  uint32_t nthreads = effective_threads(cfg, n);
  std::vector<std::vector<uint64_t>> hits(nthreads);
  std::vector<std::thread> pool;
  for (uint32_t t = 0; t < nthreads; ++t) {
    uint64_t begin = n * t / nthreads, end = n * (t + 1) / nthreads;
    auto work = [&c, &pred, &hits, t, begin, end]() {
      scan_range(c, begin, end, [&](uint64_t i, const Perm& g) {
        if (pred(g)) hits[t].push_back(i);
      });
    };
    if (nthreads == 1)
      work();
    else
      pool.emplace_back(work);
  }
  for (auto& th : pool) th.join();
  std::vector<uint64_t> out;
  for (auto& h : hits) {
    for (uint64_t v : h) {
      if (out.size() >= max_results) return out;
      out.push_back(v);
    }
  }
  return out;
}

// ----------------------------------------------------------------- closures

Closure subgroup_closure(uint32_t degree, const std::vector<Perm>& gens,
                         uint64_t cap,
                         const std::function<bool(const Perm&)>& element_ok) {
  Closure out;
  std::unordered_set<std::vector<uint16_t>, WideHash> seen;
  Perm id(degree);
  seen.insert(std::vector<uint16_t>(id.data(), id.data() + degree));
  out.elements.push_back(id);
  for (size_t head = 0; head < out.elements.size(); ++head) {
    for (const Perm& g : gens) {
      Perm next = compose(out.elements[head], g);
      std::vector<uint16_t> key(next.data(), next.data() + degree);
      if (!seen.insert(std::move(key)).second) continue;
      if (element_ok && !element_ok(next)) {
        out.rejected = true;
        return out;
      }
      out.elements.push_back(std::move(next));
      if (out.elements.size() > cap) {
        out.overflowed = true;
        return out;
      }
    }
  }
  return out;
}

std::optional<uint64_t> two_group_order(uint32_t degree,
                                        const std::vector<Perm>& gens,
                                        uint64_t cap) {
  for (const Perm& g : gens)
    if (g.degree() != degree) throw std::invalid_argument("degree mismatch");
  auto pow2 = [](const Perm& g) {
    uint64_t o = g.order();
    return (o & (o - 1)) == 0;
  };
  for (const Perm& g : gens)
    if (!pow2(g)) return std::nullopt;
  Closure c = subgroup_closure(degree, gens, cap, pow2);
  if (c.rejected || c.overflowed) return std::nullopt;
  return c.elements.size();
}

}  // namespace o3
