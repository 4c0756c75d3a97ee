#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "o3/chain.hpp"
#include "o3/config.hpp"
#include "o3/perm.hpp"

// Element enumeration and key-based search over a stabilizer chain.
//
// Elements are streamed as products of transversal representatives with the
// shallowest digit varying fastest; the stream order is a pure function of
// the chain, and seek() makes any position directly addressable, which is
// what keeps chunked multi-threaded scans deterministic.
//
// An element is identified by its base-image tuple.  When the tuple packs
// into 64 bits we run on integer keys; otherwise the wide fallback keeps the
// raw image tuples.  Conjugacy classes are explored as BFS over keys alone;
// members are reconstructed on demand (O(base length) lookups + compositions
// per element), so a class costs its size in keys, not in permutations.

namespace o3 {

class ElementStream {
 public:
  explicit ElementStream(const StabChain& c);

  uint64_t size() const { return size_; }
  uint64_t index() const { return idx_; }
  const Perm& current() const { return prefix_[0]; }

  bool advance();           // false once the stream is exhausted
  void seek(uint64_t idx);  // idx < size()

 private:
  void rebuild_from(size_t level);

  const StabChain* c_;
  std::vector<uint32_t> digits_;
  std::vector<Perm> prefix_;  // prefix_[l] = u_{m-1} * ... * u_l; prefix_[m] = id
  uint64_t idx_ = 0;
  uint64_t size_ = 1;
};

struct KeySpec {
  uint32_t degree = 0;
  uint32_t levels = 0;
  uint32_t bits = 0;    // per base image
  bool packed = false;  // levels * bits <= 64
};

KeySpec key_spec(const StabChain& c);

uint64_t packed_key(const KeySpec& ks, const StabChain& c, const Perm& g);
std::vector<uint16_t> base_images(const StabChain& c, const Perm& g);
uint64_t pack_images(const KeySpec& ks, const uint16_t* imgs);

// Rebuilds the unique member with the given base images; false if the tuple
// does not name a member.  Doubles as the membership test used by searches.
bool element_from_base_images(const StabChain& c, const uint16_t* imgs, Perm& out);

inline bool element_from_packed_key(const KeySpec& ks, const StabChain& c,
                                    uint64_t key, Perm& out) {
  uint16_t imgs[64];
  for (uint32_t l = 0; l < ks.levels; ++l)
    imgs[l] = (uint16_t)((key >> (l * ks.bits)) & ((1u << ks.bits) - 1));
  return element_from_base_images(c, imgs, out);
}

// --------------------------------------------------------------- conjugacy

struct ConjOrbit {
  uint64_t size = 0;
  bool overflowed = false;                     // exceeded cap; members invalid
  std::vector<uint64_t> members;               // packed keys, sorted
  std::vector<std::vector<uint16_t>> wide_members;  // wide keys, sorted
};

// Orbit of x0 under conjugation by the chain's group, BFS over keys.
ConjOrbit conjugation_orbit(const StabChain& c, const Perm& x0, uint64_t cap);

// ------------------------------------------------------------------- scans

struct ScanIndex {
  KeySpec spec;
  uint64_t scanned = 0;
  std::vector<uint64_t> order3_idx;   // stream indices, ascending
  std::vector<uint64_t> order3_key;   // parallel packed keys (packed case only)
  std::vector<uint64_t> involution_idx;
};

// One full deterministic pass over the stream collecting every element of
// order 3 and every involution.  Refuses (ResourceError) if the group order
// exceeds cfg.cap.
ScanIndex build_scan_index(const StabChain& c, const RunConfig& cfg);

// Generic deterministic scans.
uint64_t count_matching(const StabChain& c, const RunConfig& cfg,
                        const std::function<bool(const Perm&)>& pred);
std::optional<uint64_t> first_matching(const StabChain& c, const RunConfig& cfg,
                                       const std::function<bool(const Perm&)>& pred);
std::vector<uint64_t> all_matching(const StabChain& c, const RunConfig& cfg,
                                   const std::function<bool(const Perm&)>& pred,
                                   uint64_t max_results);

// ---------------------------------------------------------------- closures

struct Closure {
  std::vector<Perm> elements;  // discovery order; elements[0] = identity
  bool overflowed = false;     // grew past cap
  bool rejected = false;       // element_ok returned false somewhere
};

// BFS closure of <gens> by right multiplication.  element_ok, when given, is
// applied to every new element; a false verdict stops the closure.
Closure subgroup_closure(uint32_t degree, const std::vector<Perm>& gens,
                         uint64_t cap,
                         const std::function<bool(const Perm&)>& element_ok = {});

// Order of <gens> if it is a 2-group of order <= cap, otherwise nullopt.
std::optional<uint64_t> two_group_order(uint32_t degree,
                                        const std::vector<Perm>& gens,
                                        uint64_t cap);

}  // namespace o3
