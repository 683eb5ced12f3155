#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "scsp/language.hpp"
#include "scsp/oracle.hpp"
#include "scsp/simpmap.hpp"

namespace scsp {

// Positive DNF definition of a source relation over target atoms.
struct Definition {
  int arity = 0;
  std::vector<std::vector<SimpAtom>> clauses;
};

// Branching map: rewrites a local instance (over at most `radius` variables)
// into a solution-preserving list of target-language instances by replacing
// non-target constraints with their definition clauses and pruning
// unsatisfiable branches. Entries are computed lazily and memoized under a
// canonical renaming of the local variables.
class BranchingMap {
 public:
  SchemePtr scheme;
  int radius = 0;
  Language target;
  std::map<std::string, Definition> defs;  // keyed by relation id
  std::string provenance;                  // "synthesized" or "built-in"
  // Re-checks Sol-preservation of every memoized entry against the oracle
  // (skipped when the window exceeds the enumeration cap).
  bool verify_entries = true;
  OracleOptions oracle;

  bool in_target(const std::string& name, const Relation& rel) const;

  // Branches renamed back onto the local instance's own variables. An empty
  // list means the local instance is unsatisfiable.
  std::vector<Instance> apply(const Instance& local) const;

  // Post-pruning maximum branch count over the keys visited so far.
  int branching_factor() const;

  std::string dump() const;  // memo table as JSON

 private:
  struct Memo {
    std::mutex mu;
    std::map<std::string, std::vector<Instance>> entries;
  };
  // Shared so that copies of the map reuse one table.
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

  std::vector<Instance> expand(const Instance& canonical) const;
  std::vector<Instance> entry(const Instance& canonical) const;
};

// Definition file: {S-relation name: [[[T-name, i, j], ...], ...]}. Names
// are resolved against S for keying; atoms of the form ["not", ...] are
// rejected.
std::map<std::string, Definition> parse_definitions(const std::string& json_text,
                                                    const Language& source);

BranchingMap synthesize(const Language& source, const Language& target,
                        int radius, std::map<std::string, Definition> defs);

// Derives one clause per basic (unions) or reuses the stored DNF clauses
// (negation was already eliminated when the relation was built), then
// delegates to synthesize. Needs radius >= max(2, max source arity).
BranchingMap synthesize_from_backdoor_triple(const Language& source,
                                             const Language& target,
                                             int radius);

// Built-in maps: the RCC-5 {PP | rest} split at radius 2 and 3, and the
// radius-3 map for the example ternary equality-pattern relation.
BranchingMap make_omega2();
BranchingMap make_omega3();
BranchingMap make_delta_map();

// The ternary relation (y1=y2 and y1!=y3) or (y1!=y2 and y2=y3).
DnfRel build_delta();

}  // namespace scsp
