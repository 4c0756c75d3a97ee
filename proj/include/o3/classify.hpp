#pragma once

#include <cstdint>
#include <vector>

#include "o3/chain.hpp"
#include "o3/config.hpp"
#include "o3/search.hpp"

// Order-3 conjugacy classes of a permutation group, with two verdicts per
// class computed from explicit witnesses:
//
//   centralizes: some involution commutes with the class representative;
//   normalizes:  the representative normalizes some nontrivial 2-subgroup.
//
// The normalizes test runs over single involutions t: x normalizes a
// nontrivial 2-subgroup exactly when <t, t^x, t^(x^2)> is a 2-group for some
// involution t.  The generated subgroup is visibly x-invariant (x permutes
// the three generators up to the relation x^3 = 1); conversely an
// x-invariant 2-group U contains an involution t, and then the three
// conjugates lie in U.  Witnesses are the first hits in stream order.

namespace o3 {

struct ClassRecord {
  Perm rep;               // first member of the class in stream order
  uint64_t rep_idx = 0;   // its stream index
  uint64_t size = 0;
  uint64_t centralizer_order = 0;

  bool centralizes = false;
  int64_t centralizing_involution = -1;  // stream index; -1 when none

  bool normalizes = false;
  int64_t witness_involution = -1;       // stream index of t; -1 when none
  uint64_t witness_subgroup_order = 0;   // |<t, t^x, t^(x^2)>|

  ConjOrbit members;
  uint32_t merged_id = 0;  // classes paired by inversion share the smaller id
};

struct ClassifyResult {
  uint64_t group_order = 0;
  uint64_t order3_count = 0;
  uint64_t involution_count = 0;
  bool o3_trivial = true;  // no order-3 class generates a 3-group
  std::vector<ClassRecord> classes;  // discovery (stream) order
  uint32_t merged_count = 0;         // classes counted up to inversion
};

ClassifyResult classify(const StabChain& chain, const RunConfig& cfg);

// Brute-force verdicts sharing no logic with classify(): materializes the
// whole group, finds a Sylow 2-subgroup by greedy closure, enumerates all of
// its subgroups as bitmasks over the Sylow element list (order <= 64), and
// answers the normalizes question by direct conjugation of subgroups.
struct OracleResult {
  uint64_t sylow2_order = 0;
  uint64_t subgroup_count = 0;  // subgroups of the chosen Sylow 2-subgroup
  std::vector<uint64_t> class_sizes;
  std::vector<bool> centralizes;
  std::vector<bool> normalizes;
};

OracleResult oracle_classify(const StabChain& chain, const std::vector<Perm>& reps,
                             uint64_t cap);

}  // namespace o3
