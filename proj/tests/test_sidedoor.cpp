#include <doctest.h>

#include <sstream>

#include "scsp/gadgets.hpp"
#include "scsp/sidedoor.hpp"

using namespace scsp;

namespace {

TMembership rcc5_membership() {
  TMembership m;
  m.target = rcc5_gamma_prime(load_scheme("rcc5"));
  m.semantic = true;
  return m;
}

TMembership eq_membership() {
  TMembership m;
  m.target = basics_language(load_scheme("eq"));
  m.semantic = true;
  return m;
}

Instance delta_instance() {
  Instance inst;
  inst.scheme = load_scheme("eq");
  for (const char* v : {"x", "y", "z"}) inst.add_var(v);
  int rel = inst.add_rel("delta", build_delta());
  inst.add_constraint_idx(rel, {0, 1, 2});
  return inst;
}

Sidedoor sets_of(const Instance& inst,
                 const std::vector<std::vector<std::string>>& sets,
                 int radius) {
  Sidedoor sd;
  sd.radius = radius;
  for (const auto& set : sets) {
    std::vector<int> idx;
    for (const auto& v : set) idx.push_back(inst.var_index(v));
    std::sort(idx.begin(), idx.end());
    sd.sets.push_back(std::move(idx));
  }
  return sd;
}

}  // namespace

TEST_CASE("sidedoors parse and serialize") {
  Instance inst = delta_instance();
  Sidedoor sd = parse_sidedoor(R"({"radius":3,"sets":[["z","x","y"]]})", inst);
  CHECK(sd.radius == 3);
  REQUIRE(sd.sets.size() == 1);
  CHECK(sd.sets[0] == std::vector<int>{0, 1, 2});  // sorted by index
  std::string text = serialize_sidedoor(sd, inst);
  Sidedoor back = parse_sidedoor(text, inst);
  CHECK(back.sets == sd.sets);
  CHECK_THROWS_AS(parse_sidedoor(R"({"radius":3,"sets":[["w"]]})", inst),
                  UnknownVariable);
  CHECK_THROWS_AS(parse_sidedoor(R"({"sets":[]})", inst), ParseError);
}

TEST_CASE("membership is syntactic by name, semantic on request") {
  Instance inst;
  inst.scheme = load_scheme("rcc5");
  inst.add_var("a");
  inst.add_var("b");
  Mask pp = bit(inst.scheme->basic_index("PP"));
  int named = inst.add_rel("PP", UnionRel{pp});
  int renamed = inst.add_rel("mine", UnionRel{pp});
  inst.add_constraint_idx(named, {0, 1});
  inst.add_constraint_idx(renamed, {0, 1});

  TMembership syntactic;
  syntactic.target = rcc5_gamma_prime(inst.scheme);
  CHECK(syntactic.contains(inst, named));
  CHECK(!syntactic.contains(inst, renamed));

  TMembership semantic = syntactic;
  semantic.semantic = true;
  CHECK(semantic.contains(inst, renamed));
}

TEST_CASE("sidedoor validation checks sizes and coverage") {
  Instance inst = delta_instance();
  TMembership membership = eq_membership();
  int failing = -2;

  Sidedoor good = sets_of(inst, {{"x", "y", "z"}}, 3);
  CHECK(validate_sidedoor(inst, good, membership, &failing));

  Sidedoor narrow = sets_of(inst, {{"x", "y", "z"}}, 2);
  CHECK(!validate_sidedoor(inst, narrow, membership, &failing));
  CHECK(failing == -1);  // the set itself exceeds the radius

  Sidedoor partial = sets_of(inst, {{"x", "y"}}, 3);
  CHECK(!validate_sidedoor(inst, partial, membership, &failing));
  CHECK(failing == 0);  // the ternary constraint is uncovered
}

TEST_CASE("evaluation on the ternary either-or instance") {
  Instance inst = delta_instance();
  BranchingMap map = make_delta_map();
  Sidedoor sd = sets_of(inst, {{"x", "y", "z"}}, 3);

  std::ostringstream trace;
  SidedoorEvalOptions opts;
  opts.trace = true;
  opts.trace_out = &trace;
  opts.debug_invariant = true;
  SidedoorEvalResult res = evaluate_sidedoor(inst, sd, map, opts);
  CHECK(res.sat);
  CHECK(res.leaves == 1);  // the first branch already satisfies
  CHECK(trace.str().find("branch=0") != std::string::npos);
  CHECK(trace.str().find("leaf result=SAT") != std::string::npos);

  // Pinning both pairs apart kills every branch before any leaf.
  int ner = inst.add_rel("!=", UnionRel{bit(inst.scheme->basic_index("!="))});
  inst.add_constraint_idx(ner, {0, 1});
  inst.add_constraint_idx(ner, {1, 2});
  SidedoorEvalResult unsat = evaluate_sidedoor(inst, sd, map);
  CHECK(!unsat.sat);
  CHECK(unsat.leaves == 0);

  Sidedoor wrong = sets_of(inst, {{"x", "y", "z"}}, 2);
  CHECK_THROWS_AS((void)evaluate_sidedoor(inst, wrong, map), RadiusMismatch);

  // An empty set family reaches the leaf with the non-target constraint.
  Sidedoor empty;
  empty.radius = 3;
  CHECK_THROWS_AS((void)evaluate_sidedoor(delta_instance(), empty, map),
                  NotASidedoor);
}

TEST_CASE("planted families evaluate to the oracle answer within bounds") {
  BranchingMap omega = make_omega3();
  auto rcc5 = load_scheme("rcc5");
  DoorSpec spec;
  spec.kind = DoorSpec::Kind::Sidedoor;
  for (unsigned seed = 1; seed <= 5; ++seed) {
    Planted p = generate_planted(rcc5, 6, spec, seed);
    Sidedoor sd = sets_of(p.instance, p.sidedoor_sets, p.radius);
    TMembership membership = rcc5_membership();
    CHECK(validate_sidedoor(p.instance, sd, membership));

    SidedoorEvalOptions opts;
    opts.debug_invariant = true;
    SidedoorEvalResult res = evaluate_sidedoor(p.instance, sd, omega, opts);
    CHECK(res.sat == find_certificate(p.instance).has_value());
    CHECK(res.leaves <= 49);  // branching factor at most 7 per set
  }
}

TEST_CASE("detection solves the triangle-partition gadget") {
  Graph k3 = parse_graph(R"({
    "vertices": ["u", "v", "w"],
    "edges": [["u", "v"], ["v", "w"], ["u", "w"]]
  })");
  SidedoorDetectionInput in = edge_partition_reduction(k3);
  TMembership membership = rcc5_membership();
  auto found = detect_sidedoor(in.instance, in.r, in.k, membership);
  REQUIRE(found.sidedoor.has_value());
  CHECK(found.sidedoor->sets.size() == 1);
  CHECK(found.sidedoor->sets[0] == std::vector<int>{0, 1, 2});
  CHECK(validate_sidedoor(in.instance, *found.sidedoor, membership));

  // K_4 has six edges but no partition into two triangles.
  Graph k4 = parse_graph(R"({
    "vertices": ["a", "b", "c", "d"],
    "edges": [["a","b"],["a","c"],["a","d"],["b","c"],["b","d"],["c","d"]]
  })");
  SidedoorDetectionInput in4 = edge_partition_reduction(k4);
  auto none = detect_sidedoor(in4.instance, in4.r, in4.k, membership);
  CHECK(!none.sidedoor.has_value());

  // All-target instances need no sets at all.
  Instance easy;
  easy.scheme = load_scheme("rcc5");
  easy.add_var("a");
  easy.add_var("b");
  int rel = easy.add_rel("PP", UnionRel{bit(easy.scheme->basic_index("PP"))});
  easy.add_constraint_idx(rel, {0, 1});
  auto trivial = detect_sidedoor(easy, 3, 2, membership);
  REQUIRE(trivial.sidedoor.has_value());
  CHECK(trivial.sidedoor->sets.empty());

  // Too many core variables for the budget: immediate NONE.
  auto tight = detect_sidedoor(in4.instance, 3, 1, membership);
  CHECK(!tight.sidedoor.has_value());
}
