#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "o3/classify.hpp"
#include "o3/factory.hpp"

// Symbolic verdicts for order-3 classes of the supported almost simple
// families, and the machinery that cross-checks them against computed
// classes.  Every verdict carries a self-contained rule string; rows the
// engine cannot rebuild computationally (exceptional groups beyond native
// permutation constructions) are flagged desk_verifiable = false.

namespace o3 {

// Families the symbolic tables know.  A superset of the constructible ones:
// G2, 2G2 and J3 rows are quoted, not computed.
enum class LieFamily {
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
  G2,
  TwoG2,
  J3,
  J3_2,
};

LieFamily lie_family_from_string(const std::string& s);  // throws on unknown
std::string to_string(LieFamily f);

struct SymbolicGroup {
  LieFamily family;
  uint32_t n = 0;  // Alt/Sym only
  uint64_t q = 0;  // field parameter; for TwoG2 the full 3^(2f+1)
};

// Group name for table rows, e.g. "PSL(2,8)", "Alt(6)", "2G2(27)", "J3".
std::string symbolic_name(const SymbolicGroup& g);

// Mapping from constructed groups; throws for families with no symbolic
// tables (FrobA4, Wreath, Bundle).
SymbolicGroup symbolic_group(const ParsedName& pn);

enum class ClassKind {
  Unipotent,        // characteristic 3, labeled by Jordan type
  Split,            // regular semisimple, eigenvalues split maximally
  PartiallySplit,   // regular semisimple, mixed eigenvalue fields
  Irreducible,      // regular semisimple, irreducible characteristic polynomial
  NonRegular,       // semisimple with repeated eigenvalues
  FieldAuto,        // coset of a field automorphism
  CycleType,        // Alt/Sym classes, labeled by 3-cycle and fixed counts
  Named,            // rows quoted by name (exceptional groups)
};

struct ClassDescriptor {
  ClassKind kind = ClassKind::Named;
  std::vector<uint32_t> jordan;  // Unipotent: block sizes, descending
  uint32_t cycles3 = 0;          // CycleType
  uint32_t fixed = 0;            // CycleType
  std::string name;              // Named
  bool outer = false;            // outside the simple socle

  std::string label() const;
  bool operator==(const ClassDescriptor& o) const;
};

// Inverse of label(): "J3+J1", "split", "outer irreducible", "A1t3", ...
// CycleType labels additionally accept cycle strings like "(123)(456)",
// resolved against g (which supplies n).  Throws on labels inadmissible for
// the family.
ClassDescriptor descriptor_from_label(const SymbolicGroup& g, const std::string& label);

struct Verdict {
  bool centralizes = true;
  bool normalizes = true;
  std::string rule;
  bool desk_verifiable = true;
};

// Symbolic verdict for one class.  Throws std::invalid_argument when the
// group parameters are excluded or the descriptor has no rule.
Verdict class_verdict(const SymbolicGroup& g, const ClassDescriptor& d);

struct PredictRow {
  ClassDescriptor desc;
  Verdict verdict;
};

// The order-3 class rows the tables guarantee for this group, with verdicts.
std::vector<PredictRow> predict_rows(const SymbolicGroup& g);

// ------------------------------------------------------------------- tori

// Maximal torus orders in the projective group: PSL2 {split, irreducible},
// PSL3/PSU3 {split, partially split, irreducible} (d the usual gcd).
std::vector<uint64_t> torus_orders(LieFamily fam, uint64_t q);

// Does the named torus type contain an element of order 3?
bool torus_has_order3(LieFamily fam, uint64_t q, ClassKind kind);

// --------------------------------------------------------------- unipotent

enum class FormKind { Linear, Symplectic, Orthogonal };

// Is the Jordan block multiset realizable in the isometry group?
// (Symplectic: odd sizes in pairs; orthogonal: even sizes in pairs.)
bool jordan_valid(FormKind form, const std::vector<uint32_t>& blocks, uint32_t n);

// Centralizer orders quoted for the [2,2]/[3,3,1]-type unipotent classes;
// cases: "Sp4-J2J2", "SO7-J3J3J1", "SO8-J3J3J1J1".
std::vector<uint64_t> quoted_centralizer_orders(const std::string& the_case, uint64_t q);

// ------------------------------------------------------------ Alt/Sym rows

struct AltVerdictRow {
  uint32_t n = 0, cycles3 = 0, fixed = 0;
  bool centralizes = false, normalizes = false;
  uint64_t class_size = 0;   // size of each class of this type
  uint32_t class_count = 0;  // number of classes sharing the type
};

// Brute-forced at build time for n = 5..12.
const std::vector<AltVerdictRow>& alt_verdict_table();

Verdict alt_class_verdict(uint32_t n, uint32_t cycles3, uint32_t fixed);
Verdict sym_class_verdict(uint32_t n, uint32_t cycles3, uint32_t fixed);

// -------------------------------------------------------- exception tables

struct ExceptionRow {
  std::string group;  // concrete name, e.g. "PSL(2,8)" or "2G2(27)"
  std::string label;  // class label
  bool centralizes = false;
  bool normalizes = false;
  bool desk_verifiable = true;
  std::string rule;
};

// Every class with a false verdict, families in fixed order (PSL2, PSL3,
// PSU3, PGL3, PGU3, PSL4, PSU4, Alt, G2, 2G2, J3), parameters ascending and
// bounded by q_max where a field is involved.  q_max <= 1024.
std::vector<ExceptionRow> exception_rows(uint64_t q_max);

// ------------------------------------------------------------- crosscheck

// Lift of a permutation through the group's point action; throws when the
// handle has no matrix lift.  The returned matrix reproduces g exactly.
Mat lift_to_matrix(const GroupHandle& h, const Perm& g);

// Symbolic descriptor of a computed class (lift + eigenvalue or Jordan
// analysis for matrix families, cycle shape for Alt/Sym, socle membership
// for the split between inner and field-automorphism classes).
ClassDescriptor describe_class(const GroupHandle& h, const Perm& rep);

struct CrosscheckRow {
  std::string label;
  uint64_t size = 0;
  uint64_t centralizer_order = 0;
  bool computed_centralizes = false, computed_normalizes = false;
  bool symbolic_centralizes = false, symbolic_normalizes = false;
  bool ok = false;
  std::string rule;
};

struct CrosscheckReport {
  std::vector<CrosscheckRow> rows;    // one per computed class
  std::vector<std::string> notes;     // family-specific checks that passed
  std::vector<std::string> failures;  // discrepancies; empty means consistent
  bool ok() const { return failures.empty(); }
};

// Compares computed classes against the symbolic tables: every class must
// map to a descriptor whose verdict matches, every predicted row must be
// realized, and family-specific invariants (centralizer orders, class
// counts, constructive representatives) are checked alongside.
CrosscheckReport crosscheck_group(const GroupHandle& h, const ClassifyResult& cr);

}  // namespace o3
