#include "o3/classify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace o3 {

namespace {

bool cycle_lengths_are_powers_of(const Perm& g, uint32_t p) {
  const uint32_t n = g.degree();
  std::vector<bool> seen(n, false);
  for (uint32_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    uint32_t len = 0, j = i;
    do {
      seen[j] = true;
      j = g[j];
      ++len;
    } while (j != i);
    while (len % p == 0) len /= p;
    if (len != 1) return false;
  }
  return true;
}

uint64_t prime_part(uint64_t n, uint64_t p) {
  uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

void witness_search(const StabChain& chain, ElementStream& stream, const ScanIndex& scan,
                    ClassRecord& rec, uint64_t two_part) {
  const uint32_t degree = chain.degree();
  const Perm& x = rec.rep;
  for (uint64_t ti : scan.involution_idx) {
    stream.seek(ti);
    const Perm t = stream.current();
    const Perm tx = t.conjugate_by(x);
    if (tx == t) {
      if (!rec.centralizes) {
        rec.centralizes = true;
        rec.centralizing_involution = static_cast<int64_t>(ti);
      }
      if (!rec.normalizes) {
        // x centralizes t, so it normalizes <t> of order 2.
        rec.normalizes = true;
        rec.witness_involution = static_cast<int64_t>(ti);
        rec.witness_subgroup_order = 2;
      }
    } else if (!rec.normalizes) {
      const Perm tx2 = tx.conjugate_by(x);
      // Cheap necessary condition first: pairwise products must have 2-power
      // order in any 2-group.
      if (cycle_lengths_are_powers_of(compose(t, tx), 2) &&
          cycle_lengths_are_powers_of(compose(t, tx2), 2) &&
          cycle_lengths_are_powers_of(compose(tx, tx2), 2)) {
        const auto sub = two_group_order(degree, {t, tx, tx2}, two_part);
        if (sub) {
          rec.normalizes = true;
          rec.witness_involution = static_cast<int64_t>(ti);
          rec.witness_subgroup_order = *sub;
        }
      }
    }
    if (rec.centralizes && rec.normalizes) break;
  }
}

}  // namespace

ClassifyResult classify(const StabChain& chain, const RunConfig& cfg) {
  ClassifyResult res;
  res.group_order = chain.order();
  const uint32_t degree = chain.degree();
  const uint64_t two_part = prime_part(res.group_order, 2);
  const uint64_t three_part = prime_part(res.group_order, 3);

  const ScanIndex scan = build_scan_index(chain, cfg);
  res.order3_count = scan.order3_idx.size();
  res.involution_count = scan.involution_idx.size();
  if (res.order3_count == 0) return res;

  ElementStream stream(chain);
  std::unordered_set<uint64_t> classified;
  std::set<std::vector<uint16_t>> classified_wide;

  for (size_t i = 0; i < scan.order3_idx.size(); ++i) {
    if (scan.spec.packed) {
      if (classified.count(scan.order3_key[i])) continue;
    } else {
      stream.seek(scan.order3_idx[i]);
      if (classified_wide.count(base_images(chain, stream.current()))) continue;
    }

    ClassRecord rec;
    rec.rep_idx = scan.order3_idx[i];
    stream.seek(rec.rep_idx);
    rec.rep = stream.current();
    rec.members = conjugation_orbit(chain, rec.rep, res.order3_count);
    if (rec.members.overflowed)
      throw std::logic_error("conjugacy class exceeds the global order-3 count");
    rec.size = rec.members.size;
    if (res.group_order % rec.size != 0)
      throw std::logic_error("class size does not divide the group order");
    rec.centralizer_order = res.group_order / rec.size;

    if (scan.spec.packed)
      classified.insert(rec.members.members.begin(), rec.members.members.end());
    else
      classified_wide.insert(rec.members.wide_members.begin(), rec.members.wide_members.end());
    res.classes.push_back(std::move(rec));
  }

  for (ClassRecord& rec : res.classes) witness_search(chain, stream, scan, rec, two_part);

  // O_3-triviality: a class whose normal closure is a 3-group would witness a
  // nontrivial normal 3-subgroup.  Classes bigger than the 3-part cannot fit
  // inside one, which keeps the closure work bounded.
  for (const ClassRecord& rec : res.classes) {
    if (rec.size > three_part) continue;
    std::vector<Perm> members;
    members.reserve(rec.size);
    if (scan.spec.packed) {
      for (uint64_t key : rec.members.members) {
        Perm m;
        if (!element_from_packed_key(scan.spec, chain, key, m))
          throw std::logic_error("class member key fails reconstruction");
        members.push_back(std::move(m));
      }
    } else {
      for (const auto& wide : rec.members.wide_members) {
        Perm m;
        if (!element_from_base_images(chain, wide.data(), m))
          throw std::logic_error("class member key fails reconstruction");
        members.push_back(std::move(m));
      }
    }
    const Closure cl = subgroup_closure(degree, members, three_part, [](const Perm& g) {
      return cycle_lengths_are_powers_of(g, 3);
    });
    if (!cl.overflowed && !cl.rejected) res.o3_trivial = false;
  }

  // Pair classes with their inverse classes.
  for (uint32_t i = 0; i < res.classes.size(); ++i) res.classes[i].merged_id = i;
  for (uint32_t i = 0; i < res.classes.size(); ++i) {
    const Perm inv = res.classes[i].rep.inverse();
    uint32_t j = static_cast<uint32_t>(res.classes.size());
    if (scan.spec.packed) {
      const uint64_t key = packed_key(scan.spec, chain, inv);
      for (uint32_t c = 0; c < res.classes.size(); ++c) {
        const auto& mem = res.classes[c].members.members;
        if (std::binary_search(mem.begin(), mem.end(), key)) {
          j = c;
          break;
        }
      }
    } else {
      const auto key = base_images(chain, inv);
      for (uint32_t c = 0; c < res.classes.size(); ++c) {
        const auto& mem = res.classes[c].members.wide_members;
        if (std::binary_search(mem.begin(), mem.end(), key)) {
          j = c;
          break;
        }
      }
    }
    if (j >= res.classes.size())
      throw std::logic_error("inverse of a class representative escapes all classes");
    const uint32_t m = std::min(res.classes[i].merged_id, res.classes[j].merged_id);
    res.classes[i].merged_id = m;
    res.classes[j].merged_id = m;
  }
  std::set<uint32_t> distinct;
  for (const ClassRecord& rec : res.classes) distinct.insert(rec.merged_id);
  res.merged_count = static_cast<uint32_t>(distinct.size());
  return res;
}

OracleResult oracle_classify(const StabChain& chain, const std::vector<Perm>& reps,
                             uint64_t cap) {
  const uint64_t order = chain.order();
  if (order > cap)
    throw ResourceError("oracle cap exceeded: group order " + std::to_string(order) +
                        " > " + std::to_string(cap));
  const uint32_t degree = chain.degree();
  const uint64_t two_part = prime_part(order, 2);
  if (two_part > 64)
    throw ResourceError("oracle handles Sylow 2-subgroups of order at most 64, got " +
                        std::to_string(two_part));

  std::vector<Perm> all;
  all.reserve(order);
  {
    ElementStream s(chain);
    do {
      all.push_back(s.current());
    } while (s.advance());
  }
  if (all.size() != order) throw std::logic_error("stream size disagrees with chain order");

  auto byte_key = [degree](const Perm& g) {
    return std::string(reinterpret_cast<const char*>(g.data()), degree * 2);
  };
  std::unordered_map<std::string, uint32_t> elt_index;
  elt_index.reserve(all.size() * 2);
  for (uint32_t i = 0; i < all.size(); ++i) elt_index.emplace(byte_key(all[i]), i);

  OracleResult out;

  // Conjugacy classes of the given representatives by direct conjugation.
  std::vector<std::vector<uint32_t>> class_members;
  for (const Perm& r : reps) {
    std::set<uint32_t> mem;
    for (const Perm& g : all) mem.insert(elt_index.at(byte_key(r.conjugate_by(g))));
    class_members.emplace_back(mem.begin(), mem.end());
    out.class_sizes.push_back(mem.size());
  }

  // Greedy Sylow 2-subgroup: repeatedly adjoin the first element (in stream
  // order) that keeps the closure a 2-group.  A proper 2-subgroup always
  // extends inside an enclosing Sylow via its normalizer, so this terminates
  // at full 2-part.
  std::vector<Perm> sylow_gens;
  std::vector<uint32_t> sylow = {elt_index.at(byte_key(Perm(degree)))};
  std::unordered_set<uint32_t> in_sylow(sylow.begin(), sylow.end());
  while (sylow.size() < two_part) {
    bool grew = false;
    for (uint32_t gi = 0; gi < all.size() && !grew; ++gi) {
      if (in_sylow.count(gi)) continue;
      if (!cycle_lengths_are_powers_of(all[gi], 2)) continue;
      std::vector<Perm> trial = sylow_gens;
      trial.push_back(all[gi]);
      if (!two_group_order(degree, trial, two_part)) continue;
      sylow_gens = std::move(trial);
      const Closure cl = subgroup_closure(degree, sylow_gens, two_part, {});
      sylow.clear();
      in_sylow.clear();
      for (const Perm& e : cl.elements) {
        const uint32_t idx = elt_index.at(byte_key(e));
        sylow.push_back(idx);
        in_sylow.insert(idx);
      }
      grew = true;
    }
    if (!grew) throw std::logic_error("greedy Sylow construction stalled");
  }
  std::sort(sylow.begin(), sylow.end());
  out.sylow2_order = sylow.size();

  // Multiplication table of the Sylow subgroup and position lookup.
  const uint32_t ps = static_cast<uint32_t>(sylow.size());
  std::unordered_map<uint32_t, uint32_t> pos_of;
  for (uint32_t i = 0; i < ps; ++i) pos_of.emplace(sylow[i], i);
  std::vector<uint8_t> mult(ps * ps);
  for (uint32_t i = 0; i < ps; ++i)
    for (uint32_t j = 0; j < ps; ++j)
      mult[i * ps + j] = static_cast<uint8_t>(
          pos_of.at(elt_index.at(byte_key(compose(all[sylow[i]], all[sylow[j]])))));

  // All subgroups of the Sylow as bitmasks, BFS over one-generator
  // extensions.  Masks always contain the identity's position bit.
  const uint32_t id_pos = pos_of.at(elt_index.at(byte_key(Perm(degree))));
  auto close_mask = [&](uint64_t mask) {
    uint64_t work = mask;  // positions whose products are not yet folded in
    while (work) {
      const uint32_t i = static_cast<uint32_t>(__builtin_ctzll(work));
      work &= work - 1;
      for (uint32_t j = 0; j < ps; ++j) {
        if (!(mask >> j & 1)) continue;
        for (const uint32_t k : {uint32_t(mult[i * ps + j]), uint32_t(mult[j * ps + i])}) {
          const uint64_t bit = 1ull << k;
          if (!(mask & bit)) {
            mask |= bit;
            work |= bit;
          }
        }
      }
    }
    return mask;
  };
  std::set<uint64_t> subgroups;
  std::vector<uint64_t> queue = {1ull << id_pos};
  subgroups.insert(queue[0]);
  while (!queue.empty()) {
    const uint64_t u = queue.back();
    queue.pop_back();
    for (uint32_t pbit = 0; pbit < ps; ++pbit) {
      if (u >> pbit & 1) continue;
      const uint64_t v = close_mask(u | (1ull << pbit));
      if (subgroups.insert(v).second) queue.push_back(v);
    }
  }
  out.subgroup_count = subgroups.size();

  // Verdicts.
  for (size_t c = 0; c < reps.size(); ++c) {
    bool cent = false;
    for (const Perm& g : all) {
      if (!g.is_involution()) continue;
      if (compose(g, reps[c]) == compose(reps[c], g)) {
        cent = true;
        break;
      }
    }
    out.centralizes.push_back(cent);

    bool norm = false;
    for (uint64_t u : subgroups) {
      if (norm) break;
      if ((u & (u - 1)) == 0) continue;  // identity subgroup only
      for (uint32_t mi : class_members[c]) {
        const Perm& x = all[mi];
        bool invariant = true;
        for (uint32_t i = 0; i < ps && invariant; ++i) {
          if (!(u >> i & 1) || i == id_pos) continue;
          const auto it = elt_index.find(byte_key(all[sylow[i]].conjugate_by(x)));
          if (it == elt_index.end()) {
            invariant = false;
            break;
          }
          const auto pit = pos_of.find(it->second);
          invariant = pit != pos_of.end() && (u >> pit->second & 1);
        }
        if (invariant) {
          norm = true;
          break;
        }
      }
    }
    out.normalizes.push_back(norm);
  }
  return out;
}

}  // namespace o3
