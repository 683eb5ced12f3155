#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scsp/model.hpp"

namespace scsp {

struct HittingSetInstance {
  std::vector<std::string> universe;
  std::vector<std::vector<std::string>> family;  // members of the universe
  int budget = 0;
};

HittingSetInstance parse_hitting_set(const std::string& json_text);

struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // vertex indices, smaller first
};

Graph parse_graph(const std::string& json_text);

// R_k over the eq scheme: all scope entries equal, or all pairwise distinct.
// Two-clause DNF with k(k-1)/2 atoms per clause.
DnfRel build_rk(int k);  // throws KTooSmall for k < 2

struct BackdoorDetectionInput {
  Instance instance;
  int k = 0;
};

// Detection instance over eq whose minimum backdoor size equals the minimum
// hitting set size: one R_{|F|+1} constraint per family member F, scoped on
// F plus a shared hub variable.
BackdoorDetectionInput hitting_set_reduction(const HittingSetInstance& hs);

struct SidedoorDetectionInput {
  Instance instance;
  int r = 0;
  int k = 0;
};

// Detection instance over rcc5 with one (PP,PPi) constraint per edge; a
// sidedoor of size |E|/3 with radius 3 exists iff the edges partition into
// triangles. Requires |E| divisible by 3.
SidedoorDetectionInput edge_partition_reduction(const Graph& g);

struct DoorSpec {
  enum class Kind { Backdoor, Sidedoor };
  Kind kind = Kind::Backdoor;
  int size = 1;          // backdoor: number of planted pairs
  double density = 0.5;  // probability of constraining a non-door pair
};

struct Planted {
  Instance instance;
  std::vector<std::pair<std::string, std::string>> backdoor;
  std::vector<std::vector<std::string>> sidedoor_sets;
  int radius = 0;
};

// Deterministic for a fixed seed. Backdoor planting works on any scheme:
// planted pairs carry arbitrary union relations, all other constraints are
// basic. Sidedoor planting builds the rcc5 triangle family: within-triangle
// relations outside the tractable fragment, cross relations inside it.
Planted generate_planted(SchemePtr scheme, int n, const DoorSpec& spec,
                         unsigned seed);

}  // namespace scsp
