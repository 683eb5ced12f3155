#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "scsp/oracle.hpp"
#include "scsp/simpmap.hpp"

namespace scsp {

// Set of unordered variable pairs, stored smaller index first and sorted.
struct Backdoor {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  bool contains(int x, int y) const;
  void add(int x, int y);  // normalizes and keeps the list sorted
};

Backdoor make_backdoor(
    const Instance& inst,
    const std::vector<std::pair<std::string, std::string>>& pairs);

// Every consistent alpha: B -> basics, in deterministic order (pairs sorted,
// basics in table order), pruned incrementally by algebraic closure and
// certified exactly at the leaves.
std::vector<PairAssignment> consistent_alphas(const Instance& inst,
                                              const Backdoor& bd,
                                              const OracleOptions& opts = {});

std::string alpha_str(const Instance& inst, const PairAssignment& alpha);

// The translated instance I|alpha: every constraint replaced by its
// simplification-map image. Returns nullopt and sets *failing to the
// constraint index when some entry is undefined.
std::optional<Instance> translate_instance(const Instance& inst,
                                           const PairAssignment& alpha,
                                           const SimplificationMap& map,
                                           int* failing = nullptr);

using TargetSolver = std::function<bool(const Instance&)>;

struct EvalOptions {
  // Restricts the basics tried on a pair to those appearing in the union
  // constraints on that pair (the branching refinement for schemes whose
  // only trivial relation is the full one). Off by default: it can hide
  // undefined entries reachable only through dead branches.
  bool skip_trivial_relation = false;
  int jobs = 1;
  bool trace = false;
  std::ostream* trace_out = nullptr;
  TargetSolver target_solver;  // default: exact certificate search
  OracleOptions oracle;
};

struct EvalResult {
  bool sat = false;
  long long branches = 0;  // consistent alphas expanded
};

// Theorem-style evaluation: SAT iff some consistent alpha yields a
// satisfiable translated instance. Throws NotABackdoor when a branch hits
// an undefined map entry.
EvalResult evaluate(const Instance& inst, const Backdoor& bd,
                    const SimplificationMap& map, const EvalOptions& opts = {});

struct DetectOptions {
  OracleOptions oracle;
};

struct DetectResult {
  std::optional<Backdoor> backdoor;  // nullopt = NONE
  long long nodes = 0;               // search-tree nodes visited
};

// Bounded-depth search tree: branch on the scope pairs of the first
// constraint some consistent alpha leaves unsimplified.
DetectResult detect(const Instance& inst, int k, const SimplificationMap& map,
                    const DetectOptions& opts = {});

struct ValidationWitness {
  std::string alpha;
  int constraint = -1;
};

bool validate_backdoor(const Instance& inst, const Backdoor& bd,
                       const SimplificationMap& map,
                       ValidationWitness* witness = nullptr,
                       const OracleOptions& opts = {});

// Greedy pair removal with re-validation.
Backdoor shrink(const Instance& inst, Backdoor bd, const SimplificationMap& map,
                const OracleOptions& opts = {});

}  // namespace scsp
