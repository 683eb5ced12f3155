#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "scsp/errors.hpp"

namespace scsp {

// Subset of basic relations as a bit set. Schemes are small (m <= 31).
using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }
inline Mask bit(int i) { return Mask{1} << i; }

enum class DomainTag { Equality, DenseOrder, Rcc5, Finite, Custom };

// A partition scheme: JEPD basic binary relations closed under converse,
// with a composition table (weak composition). The diagonal of the domain
// is covered by `identity_mask`; for the standard schemes this is a single
// basic, for finite:d it is the union of the R_ii blocks.
class PartitionScheme {
 public:
  std::string name;
  std::vector<std::string> basics;
  int identity = -1;  // -1 when no single basic equals the identity
  Mask identity_mask = 0;
  std::vector<int> converse;
  std::vector<std::vector<Mask>> composition;
  bool aclosure_decides_basics = true;
  DomainTag domain_tag = DomainTag::Custom;
  int finite_domain_size = 0;  // for DomainTag::Finite

  int size() const { return static_cast<int>(basics.size()); }
  Mask full_mask() const {
    return size() == 32 ? ~Mask{0} : (Mask{1} << size()) - 1;
  }

  int basic_index(const std::string& b) const;  // throws UnknownRelation
  int basic_index_or(const std::string& b, int fallback) const;

  Mask converse_mask(Mask m) const {
    Mask out = 0;
    for (int i = 0; i < size(); ++i)
      if (m & bit(i)) out |= bit(converse[i]);
    return out;
  }

  Mask compose_mask(Mask a, Mask b) const {
    Mask out = 0;
    for (int i = 0; i < size(); ++i) {
      if (!(a & bit(i))) continue;
      for (int j = 0; j < size(); ++j)
        if (b & bit(j)) out |= composition[i][j];
    }
    return out;
  }

  std::string mask_name(Mask m) const;  // "DR+PO+PP", "empty"

  // Checks the partition-scheme table invariants; throws MalformedTable
  // naming the failing triple.
  void validate() const;
};

using SchemePtr = std::shared_ptr<const PartitionScheme>;

// Built-in names: "rcc5", "point", "eq", "finite:<d>". Anything else is
// treated as a path to a scheme table file.
SchemePtr load_scheme(const std::string& source);
SchemePtr parse_scheme_json(const std::string& json_text);

// Binary relation as a union of basics. An empty mask is the unsatisfiable
// relation.
struct UnionRel {
  Mask mask = 0;
};

struct Atom {
  int i = 0;
  int j = 0;
  int basic = 0;
  auto operator<=>(const Atom&) const = default;
};

// k-ary relation as a positive DNF over basic atoms on argument positions.
struct DnfRel {
  int arity = 0;
  std::vector<std::vector<Atom>> clauses;
};

using Relation = std::variant<UnionRel, DnfRel>;

int relation_arity(const Relation& r);

// Removes duplicate atoms per clause, duplicate clauses, and clauses
// subsumed by another clause (superset of atoms).
DnfRel normalize_dnf(DnfRel rel);

// --- quantifier-free formulas over basic atoms, with negation ---

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Atom, Not, And, Or };
  Kind kind = Kind::Atom;
  Atom atom;  // Kind::Atom
  std::vector<FormulaPtr> children;

  static FormulaPtr mk_atom(int i, int j, int basic);
  static FormulaPtr mk_not(FormulaPtr f);
  static FormulaPtr mk_and(std::vector<FormulaPtr> fs);
  static FormulaPtr mk_or(std::vector<FormulaPtr> fs);
};

// Rewrites every negated atom as the disjunction of the other basics and
// returns the flattened positive DNF.
DnfRel eliminate_negation(const FormulaPtr& formula, int arity,
                          const PartitionScheme& scheme, int arity_cap = 4);

inline UnionRel converse_rel(const PartitionScheme& s, UnionRel r) {
  return UnionRel{s.converse_mask(r.mask)};
}

inline UnionRel compose_union(const PartitionScheme& s, UnionRel a,
                              UnionRel b) {
  return UnionRel{s.compose_mask(a.mask, b.mask)};
}

inline UnionRel intersect(UnionRel a, UnionRel b) {
  return UnionRel{a.mask & b.mask};
}

}  // namespace scsp
