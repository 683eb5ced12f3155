#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scsp/language.hpp"
#include "scsp/model.hpp"
#include "scsp/oracle.hpp"

namespace scsp {

// Canonical key of a reduced constraint: relation identity, the repetition
// pattern of its scope, and the alpha fragment restricted to the scope,
// converse-normalized onto slot pairs i < j.
struct ReducedKey {
  std::string rel_id;
  std::vector<int> pattern;  // scope position -> slot (first occurrence order)
  int nslots = 0;
  // Per slot pair (i,j), i < j, in (0,1),(0,2),..,(1,2),.. order; basic
  // index or -1 when alpha leaves the pair unset.
  std::vector<int> alpha;

  int arity() const { return static_cast<int>(pattern.size()); }
  int pair_index(int i, int j) const;
  std::string to_string(const PartitionScheme& scheme) const;
};

// "u:<canonical union name>" for union relations, the registered name for
// DNF relations. Union constraints therefore key by semantics, not by the
// name a particular instance gave them.
std::string relation_id(const PartitionScheme& scheme, const std::string& name,
                        const Relation& rel);

ReducedKey make_key(const Instance& inst, const Constraint& c,
                    const PairAssignment& alpha);
ReducedKey parse_key(const PartitionScheme& scheme, const std::string& text);

// The local instance a key denotes: slot variables s0..s{n-1}, the relation
// applied per the repetition pattern, one basic constraint per set alpha pair.
Instance key_instance(const ReducedKey& key, const std::string& rel_name,
                      const Relation& rel, SchemePtr scheme);

enum class EntryKind { Formula, Unsat };

struct SimpAtom {
  std::string rel;  // target relation or basic name
  int i = 0;        // slot indices
  int j = 0;
};

struct SimpEntry {
  EntryKind kind = EntryKind::Formula;
  std::vector<SimpAtom> atoms;
};

class SimplificationMap {
 public:
  SchemePtr scheme;
  Language source;  // names are canonical relation ids
  Language target;
  int arity_cap = 4;
  std::string provenance;  // "computed" or "built-in"
  bool builtin_rk = false;
  std::map<std::string, SimpEntry> entries;

  bool covers(const std::string& rel_id) const;

  // nullopt = undefined. Throws MissingRelationFamily for unknown relations.
  std::optional<SimpEntry> entry_for(const ReducedKey& key) const;

  // Instantiates the entry for (c, alpha) on c's scope variables; nullopt
  // when the entry is undefined.
  std::optional<Instance> lookup(const Instance& inst, const Constraint& c,
                                 const PairAssignment& alpha) const;

  // The local instance of an entry over a key's slot variables.
  Instance entry_instance(const ReducedKey& key, const SimpEntry& entry) const;

  std::string serialize() const;
};

// Exhaustive synthesis over every reachable reduced key of S (augmented with
// the target relations), equivalence-certified per entry. All T relations
// must be binary unions.
SimplificationMap compute_simpmap(const Language& source, const Language& target,
                                  int arity_cap = 4, int jobs = 1,
                                  const OracleOptions& opts = {});

// Polynomial-access map for the all-equal-or-all-distinct family R_k,
// synthesizing entries on demand instead of storing them.
SimplificationMap make_builtin_rk_map(SchemePtr scheme);

// Entry rule of the built-in map, exposed for cross-checking; k is taken
// from the key's arity.
std::optional<SimpEntry> builtin_rk_entry(const ReducedKey& key,
                                          const PartitionScheme& scheme);

// Re-checks up to `samples` entries (deterministically subsampled by seed)
// against the oracle; throws Error on any mismatch.
void verify_map(const SimplificationMap& map, int samples, unsigned seed,
                const OracleOptions& opts = {});

SimplificationMap load_map(const std::string& json_text,
                           SchemePtr scheme = nullptr);
SimplificationMap load_map_file(const std::string& path,
                                SchemePtr scheme = nullptr);

}  // namespace scsp
