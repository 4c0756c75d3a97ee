#pragma once

#include <memory>
#include <string>
#include <vector>

#include "o3/chain.hpp"
#include "o3/config.hpp"
#include "o3/matgroups.hpp"
#include "o3/perm.hpp"

// Turns group names into concrete permutation groups with verified orders.
//
// Name grammar:
//   Alt(n)  Sym(n)  PSL(n,q)  PGL(3,q)  PSU(3,q)  PSU(4,q)  PGU(3,q)
//   Sp4(q)  PGammaL2(q)  FrobA4  Wreath(PSL2(16),Sym2)  Bundle(path)
//
// Every constructed chain order is checked against the classical order
// formula (or the order stated in the bundle file); a mismatch throws.

namespace o3 {

enum class Family {
  Alt,
  Sym,
  PSL2,
  PSL3,
  PSL4,
  PSU3,
  PSU4,
  PGL3,
  PGU3,
  Sp4,
  PGammaL2,
  FrobA4,
  Wreath,
  Bundle,
};

struct ParsedName {
  Family family;
  uint32_t n = 0;        // Alt/Sym degree or matrix dimension
  uint32_t q = 0;        // field of the matrix entries' prime power (0 if none)
  std::string path;      // Bundle only
  std::string canonical;
};

// Throws std::invalid_argument on grammar or parameter errors.
ParsedName parse_group_name(const std::string& name);

// Lift metadata connecting permutations back to matrices.
struct LiftData {
  std::unique_ptr<Field> field;  // GF(q), or GF(q^2) for unitary families
  PointTable points;
  bool vector_action = false;  // Sp4 acts on nonzero vectors, others projectively
};

struct GroupHandle {
  ParsedName meta;
  bool excluded = false;           // outside the almost simple scope
  std::string exclusion_reason;
  std::vector<Perm> gens;
  StabChain chain;
  uint64_t order = 0;
  // Simple socle as a sub-chain when the group can be strictly larger
  // (PGL3, PGU3, PGammaL2); null when the group is its own socle or the
  // notion does not apply.
  std::unique_ptr<StabChain> socle;
  std::unique_ptr<LiftData> lift;

  uint32_t degree() const { return chain.degree(); }
};

GroupHandle construct_group(const std::string& name, const RunConfig& cfg);

// Standard generators, shared with the table generator tool.
std::vector<Perm> alt_generators(uint32_t n);
std::vector<Perm> sym_generators(uint32_t n);

// (p, k) with q = p^k; throws std::invalid_argument if q is not a prime power.
std::pair<uint32_t, uint32_t> factor_prime_power(uint64_t q);

// Chain cache.  Directory layout: <cache_dir>/v1/<sanitized-name>/chain.bin.
// load returns false when absent or written by another format version and
// throws on corruption (bad checksum, truncation, inconsistent content).
std::string sanitize_name(const std::string& name);
std::string cache_group_dir(const RunConfig& cfg, const std::string& canonical);
bool load_chain_cache(const std::string& dir, const std::vector<Perm>& gens, StabChain& out);
void store_chain_cache(const std::string& dir, const std::vector<Perm>& gens,
                       const StabChain& chain);

// RAII exclusive lock file; acquired() is false when another process holds it.
class CacheLock {
 public:
  explicit CacheLock(const std::string& dir);
  ~CacheLock();
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;
  bool acquired() const { return fd_ >= 0; }

 private:
  std::string path_;
  int fd_ = -1;
};

}  // namespace o3
