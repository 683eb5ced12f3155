#include <doctest.h>

#include "scsp/model.hpp"

using namespace scsp;

namespace {

const char* kDeltaDoc = R"({
  "scheme": "eq",
  "relations": {
    "delta": {"arity": 3,
              "dnf": [[[0,1,"="],[0,2,"!="]],
                      [[0,1,"!="],[1,2,"="]]]},
    "eqr": {"arity": 2, "union": ["="]}
  },
  "variables": ["x", "y", "z"],
  "constraints": [
    {"rel": "delta", "scope": ["x", "y", "z"]},
    {"rel": "eqr", "scope": ["x", "y"]}
  ]
})";

Instance delta_instance() { return parse_instance(kDeltaDoc); }

}  // namespace

TEST_CASE("instance parse and serialize round-trip") {
  Instance inst = delta_instance();
  CHECK(inst.scheme->name == "eq");
  CHECK(inst.vars == std::vector<std::string>{"x", "y", "z"});
  CHECK(inst.constraints.size() == 2);
  CHECK(inst.constraint_str(inst.constraints[0]) == "delta(x,y,z)");

  std::string text = serialize_instance(inst);
  Instance again = parse_instance(text);
  CHECK(serialize_instance(again) == text);
}

TEST_CASE("parser rejects malformed documents") {
  CHECK_THROWS_AS(parse_instance("{not json"), ParseError);
  CHECK_THROWS_AS(parse_instance(R"({"scheme":"eq"})"), ParseError);
  // Unknown basic in a union.
  CHECK_THROWS_AS(parse_instance(R"({
    "scheme": "eq",
    "relations": {"r": {"arity": 2, "union": ["PP"]}},
    "variables": ["x", "y"],
    "constraints": [{"rel": "r", "scope": ["x", "y"]}]
  })"),
                  UnknownRelation);
  // Scope length must match the arity.
  CHECK_THROWS_AS(parse_instance(R"({
    "scheme": "eq",
    "relations": {"r": {"arity": 2, "union": ["="]}},
    "variables": ["x", "y", "z"],
    "constraints": [{"rel": "r", "scope": ["x", "y", "z"]}]
  })"),
                  ArityMismatch);
  // Duplicate variable names.
  CHECK_THROWS_AS(parse_instance(R"({
    "scheme": "eq",
    "relations": {},
    "variables": ["x", "x"],
    "constraints": []
  })"),
                  ParseError);
}

TEST_CASE("single-relation json round-trip") {
  Instance inst = delta_instance();
  for (std::size_t r = 0; r < inst.rels.size(); ++r) {
    std::string text = relation_to_json(inst.rels[r], *inst.scheme);
    Relation back =
        relation_from_json_text(text, *inst.scheme, inst.rel_names[r]);
    CHECK(relation_to_json(back, *inst.scheme) == text);
  }
}

TEST_CASE("restrict keeps only fully covered constraints") {
  Instance inst = delta_instance();
  Instance sub = restrict(inst, {"x", "y"});
  CHECK(sub.vars == std::vector<std::string>{"x", "y"});
  REQUIRE(sub.constraints.size() == 1);
  CHECK(sub.constraint_str(sub.constraints[0]) == "eqr(x,y)");

  Instance none = restrict(inst, {"y", "z"});
  CHECK(none.constraints.empty());

  CHECK_THROWS_AS(restrict(inst, {"w"}), UnknownVariable);
}

TEST_CASE("splice swaps the covered region for the local instance") {
  Instance inst = delta_instance();

  Instance local;
  local.scheme = inst.scheme;
  local.add_var("x");
  local.add_var("y");
  int neq = local.add_rel("neqr", UnionRel{bit(inst.scheme->basic_index("!="))});
  local.add_constraint_idx(neq, {0, 1});

  Instance out = splice(inst, local);
  CHECK(out.vars == inst.vars);  // variable set unchanged
  REQUIRE(out.constraints.size() == 2);
  CHECK(out.constraint_str(out.constraints[0]) == "delta(x,y,z)");
  CHECK(out.constraint_str(out.constraints[1]) == "neqr(x,y)");
}

TEST_CASE("pair assignment stores converse-consistent entries") {
  auto s = load_scheme("point");
  PairAssignment alpha(s);
  int lt = s->basic_index("<");
  int gt = s->basic_index(">");
  alpha.set(2, 1, lt);  // stored as (1,2) -> ">"
  CHECK(alpha.get(2, 1) == lt);
  CHECK(alpha.get(1, 2) == gt);
  CHECK(!alpha.get(0, 1).has_value());
  CHECK(alpha.size() == 1);

  // Re-setting to the same value is fine; a conflict is not.
  CHECK_NOTHROW(alpha.set(1, 2, gt));
  CHECK_THROWS_AS(alpha.set(1, 2, lt), Error);

  // Diagonal entries must be identity basics.
  CHECK_NOTHROW(alpha.set(0, 0, s->basic_index("=")));
  CHECK_THROWS_AS(alpha.set(3, 3, lt), InconsistentAlphaDiagonal);
}

TEST_CASE("reduced constraint is the scope-local instance plus alpha atoms") {
  Instance inst = delta_instance();
  PairAssignment alpha(inst.scheme);
  int eq = inst.scheme->basic_index("=");
  alpha.set(0, 1, eq);   // (x,y), inside the scope
  alpha.set(0, 2, eq);   // (x,z), inside the scope
  Instance red = reduce_constraint(inst, inst.constraints[0], alpha);
  CHECK(red.vars == std::vector<std::string>{"x", "y", "z"});
  REQUIRE(red.constraints.size() == 3);
  CHECK(red.constraint_str(red.constraints[0]) == "delta(x,y,z)");
  CHECK(red.constraint_str(red.constraints[1]) == "basic:=(x,y)");
  CHECK(red.constraint_str(red.constraints[2]) == "basic:=(x,z)");

  // Pairs outside the scope are ignored.
  Instance red2 = reduce_constraint(inst, inst.constraints[1], alpha);
  REQUIRE(red2.constraints.size() == 2);
  CHECK(red2.vars == std::vector<std::string>{"x", "y"});
}
