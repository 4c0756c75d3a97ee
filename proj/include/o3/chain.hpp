#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "o3/perm.hpp"

// Deterministic stabilizer chains (Schreier-Sims with explicit transversals).
//
// Level l stabilizes base points b_0..b_{l-1} and carries the full orbit of
// b_l under its strong generators, sorted ascending, with one forward and one
// inverse transversal representative per orbit point stored in flat arrays
// (stride degree+1, keeping the compose kernel's padding contract).
//
// Element enumeration walks products u_{m-1} * ... * u_0 of transversal
// representatives with the level-0 digit varying fastest, so bumping the
// counter costs one composition amortized and any stream position can be
// reached directly by seek.  An element is identified by its base images
// (b_0^g, ..., b_{m-1}^g), which is what the search layer packs into keys.

namespace o3 {

struct ChainLevel {
  uint16_t base = 0;
  std::vector<uint16_t> orbit;        // ascending
  std::vector<int32_t> pos_of_point;  // degree slots; -1 when outside orbit
  std::vector<uint16_t> fwd;          // orbit.size() * stride images: base -> point
  std::vector<uint16_t> inv;          // inverses of fwd
  std::vector<Perm> gens;             // strong generators fixing b_0..b_{l-1}
  size_t stride = 0;

  const uint16_t* fwd_at(size_t j) const { return fwd.data() + j * stride; }
  const uint16_t* inv_at(size_t j) const { return inv.data() + j * stride; }
};

class StabChain {
 public:
  static StabChain build(uint32_t degree, const std::vector<Perm>& gens);

  uint32_t degree() const { return degree_; }
  size_t num_levels() const { return levels_.size(); }
  const ChainLevel& level(size_t l) const { return levels_[l]; }
  const std::vector<Perm>& generators() const { return gens_; }

  uint64_t order() const;
  bool contains(const Perm& g) const;

  // Multiplies inverse representatives onto g until stuck or exhausted;
  // returns the residue and the first level it could not be pushed through
  // (num_levels() when fully sifted).
  std::pair<Perm, size_t> sift(Perm g, size_t from_levelS = 0) const;

  // Independent Schreier verification: every level generator fixes the points
  // above it, every Schreier generator sifts to the identity, and the order
  // is the product of orbit sizes.  Used on cache load and by tests.
  bool verify() const;

  std::vector<uint16_t> base_points() const;

  // Reconstructs the chain from original + strong generators (cache path).
  static StabChain assemble(uint32_t degree, std::vector<Perm> gens,
                            const std::vector<uint16_t>& base,
                            const std::vector<std::vector<Perm>>& level_gens);

 private:
  void finish_level(size_t l);   // BFS orbit + transversals, then sort
  void complete(size_t l);       // Schreier closure at level l
  void add_level(uint16_t base_point);

  uint32_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<ChainLevel> levels_;
};

}  // namespace o3
