#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scsp/algebra.hpp"

namespace scsp {

struct Constraint {
  int rel = -1;            // index into Instance::rel_names / rels
  std::vector<int> scope;  // variable indices, length == relation arity
};

// A CSP instance over a partition scheme: interned variables, a registry of
// named relations, and an ordered constraint list. Instances are immutable
// values; restrict/splice return new instances.
class Instance {
 public:
  SchemePtr scheme;
  std::vector<std::string> vars;
  std::vector<std::string> rel_names;
  std::vector<Relation> rels;
  std::vector<Constraint> constraints;

  int var_index(const std::string& v) const;  // throws UnknownVariable
  int var_index_or(const std::string& v, int fallback) const;
  int rel_index(const std::string& r) const;  // throws UnknownRelation
  int rel_index_or(const std::string& r, int fallback) const;

  int add_var(const std::string& v);                     // idempotent
  int add_rel(const std::string& name, Relation rel);    // idempotent by name
  void add_constraint(const std::string& rel, const std::vector<std::string>& scope);
  void add_constraint_idx(int rel, std::vector<int> scope);

  std::string constraint_str(const Constraint& c) const;
};

// Keeps exactly the constraints whose scope lies inside `keep` (variable
// names); the variable set becomes `keep`.
Instance restrict(const Instance& inst, const std::vector<std::string>& keep);

// The splice operator: constraints of `inst` fully covered by the variables
// of `local` are removed, then the constraints of `local` are appended. The
// variable set stays that of `inst`.
Instance splice(const Instance& inst, const Instance& local);

// Partial map from ordered variable pairs to basic indices. Keys are stored
// with the smaller variable index first; the converse value is derived.
class PairAssignment {
 public:
  explicit PairAssignment(SchemePtr scheme) : scheme_(std::move(scheme)) {}

  // Throws InconsistentAlphaDiagonal when (x,x) is set to a non-diagonal
  // basic, and Error when a pair is re-set to a conflicting value.
  void set(int x, int y, int basic);
  std::optional<int> get(int x, int y) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::pair<int, int>, int>& entries() const { return entries_; }
  const SchemePtr& scheme() const { return scheme_; }

 private:
  SchemePtr scheme_;
  std::map<std::pair<int, int>, int> entries_;
};

// Def. of reduced constraint: the local instance over c's scope holding c
// plus one basic constraint per alpha-defined scope pair.
Instance reduce_constraint(const Instance& inst, const Constraint& c,
                           const PairAssignment& alpha);

// Single-relation (de)serialization, same JSON shape as in instance files.
std::string relation_to_json(const Relation& rel, const PartitionScheme& scheme);
Relation relation_from_json_text(const std::string& json_text,
                                 const PartitionScheme& scheme,
                                 const std::string& name);

Instance parse_instance(const std::string& json_text);
Instance parse_instance_file(const std::string& path);
std::string serialize_instance(const Instance& inst);

}  // namespace scsp
