#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "scsp/backdoor.hpp"
#include "scsp/branchmap.hpp"

namespace scsp {

struct Sidedoor {
  int radius = 0;
  std::vector<std::vector<int>> sets;  // variable indices, each sorted

  int size() const { return static_cast<int>(sets.size()); }
};

Sidedoor parse_sidedoor(const std::string& json_text, const Instance& inst);
std::string serialize_sidedoor(const Sidedoor& sd, const Instance& inst);

// Membership of a constraint's relation in the target language. Syntactic
// (by registered name) per the sidedoor definition; `semantic` additionally
// matches union relations by their basic set.
struct TMembership {
  Language target;
  bool semantic = false;

  bool contains(const Instance& inst, int rel) const;
};

// Both sidedoor conditions: set sizes within the radius, and every
// non-target constraint's scope inside some set.
bool validate_sidedoor(const Instance& inst, const Sidedoor& sd,
                       const TMembership& membership, int* failing = nullptr);

struct SidedoorEvalOptions {
  TargetSolver target_solver;  // default: exact certificate search
  OracleOptions oracle;
  bool trace = false;
  std::ostream* trace_out = nullptr;
  // Re-validates the remaining sets against every spliced branch.
  bool debug_invariant = false;
  TMembership membership;  // for the leaf check and the debug invariant
};

struct SidedoorEvalResult {
  bool sat = false;
  long long leaves = 0;
};

// The branch-and-splice recursion: take the first set, widen it to the
// radius with the smallest unused variables, branch over the map's images
// of the local instance, splice each back and recurse on the remaining
// sets. Throws NotASidedoor when a leaf still holds a non-target
// constraint, RadiusMismatch when the map radius differs.
SidedoorEvalResult evaluate_sidedoor(const Instance& inst, const Sidedoor& sd,
                                     const BranchingMap& map,
                                     const SidedoorEvalOptions& opts = {});

struct SidedoorDetectResult {
  std::optional<Sidedoor> sidedoor;  // nullopt = NONE
};

// Enumeration over families of radius-sized subsets of the variables that
// occur in non-target constraints; NONE as soon as those variables number
// more than r*k.
SidedoorDetectResult detect_sidedoor(const Instance& inst, int r, int k,
                                     const TMembership& membership);

}  // namespace scsp
