#include <doctest.h>

#include <algorithm>

#include "scsp/branchmap.hpp"

using namespace scsp;

namespace {

Instance delta_local(SchemePtr s, const std::vector<std::string>& vars,
                     const std::vector<int>& scope) {
  Instance inst;
  inst.scheme = s;
  for (const auto& v : vars) inst.add_var(v);
  int rel = inst.add_rel("delta", build_delta());
  inst.add_constraint_idx(rel, scope);
  return inst;
}

std::vector<Certificate> all_branch_certs(const std::vector<Instance>& branches) {
  std::vector<Certificate> out;
  for (const auto& b : branches) {
    auto cs = enumerate_certificates(b);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

TEST_CASE("the radius-2 split map branches each excluded relation in two") {
  BranchingMap omega = make_omega2();
  CHECK(omega.radius == 2);
  auto s = omega.scheme;
  Mask pp = bit(s->basic_index("PP"));
  Mask ppi = bit(s->basic_index("PPi"));
  Mask dr = bit(s->basic_index("DR"));

  for (Mask m : {pp | ppi, pp | ppi | dr}) {
    Instance local;
    local.scheme = s;
    local.add_var("a");
    local.add_var("b");
    int rel = local.add_rel("c", UnionRel{m});
    local.add_constraint_idx(rel, {0, 1});
    auto branches = omega.apply(local);
    REQUIRE(branches.size() == 2);
    // One branch pins PP, the other carries the rest of the union.
    Mask seen = 0;
    for (const auto& b : branches) {
      REQUIRE(b.constraints.size() == 1);
      seen |= std::get<UnionRel>(b.rels[b.constraints[0].rel]).mask;
      CHECK(omega.in_target(b.rel_names[b.constraints[0].rel],
                            b.rels[b.constraints[0].rel]));
    }
    CHECK(seen == m);
    CHECK(all_branch_certs(branches) == enumerate_certificates(local));
  }
  CHECK(omega.branching_factor() == 2);

  // Relations already inside the fragment pass through unchanged.
  Instance easy;
  easy.scheme = s;
  easy.add_var("a");
  easy.add_var("b");
  int rel = easy.add_rel("d", UnionRel{dr});
  easy.add_constraint_idx(rel, {0, 1});
  auto untouched = omega.apply(easy);
  REQUIRE(untouched.size() == 1);
  CHECK(untouched[0].constraints.size() == 1);
}

TEST_CASE("the radius-3 split map preserves solutions on triangles") {
  BranchingMap omega = make_omega3();
  CHECK(omega.radius == 3);
  auto s = omega.scheme;
  Mask pp = bit(s->basic_index("PP"));
  Mask ppi = bit(s->basic_index("PPi"));
  Mask eq = bit(s->basic_index("EQ"));

  Instance local;
  local.scheme = s;
  local.add_var("a");
  local.add_var("b");
  local.add_var("c");
  int r1 = local.add_rel("e1", UnionRel{pp | ppi});
  int r2 = local.add_rel("e2", UnionRel{pp | ppi | eq});
  local.add_constraint_idx(r1, {0, 1});
  local.add_constraint_idx(r2, {1, 2});
  local.add_constraint_idx(r1, {0, 2});
  // Entry verification runs inside apply when enabled (the default).
  auto branches = omega.apply(local);
  CHECK(!branches.empty());
  CHECK(branches.size() <= 8);
  CHECK(all_branch_certs(branches) == enumerate_certificates(local));
  for (const auto& b : branches)
    for (const auto& c : b.constraints)
      CHECK(omega.in_target(b.rel_names[c.rel], b.rels[c.rel]));
}

TEST_CASE("the ternary either-or map expands by clause") {
  BranchingMap map = make_delta_map();
  CHECK(map.radius == 3);
  auto s = map.scheme;

  Instance local = delta_local(s, {"x1", "x2", "x3"}, {0, 1, 2});
  auto branches = map.apply(local);
  REQUIRE(branches.size() == 2);
  CHECK(all_branch_certs(branches) == enumerate_certificates(local));

  // Repeating the first argument kills the second clause.
  Instance repeated = delta_local(s, {"x1", "x3"}, {0, 0, 1});
  auto one = map.apply(repeated);
  REQUIRE(one.size() == 1);
  CHECK(all_branch_certs(one) == enumerate_certificates(repeated));

  // Instances already in the target expand to themselves.
  Instance easy;
  easy.scheme = s;
  easy.add_var("x");
  easy.add_var("y");
  int rel = easy.add_rel("=", UnionRel{bit(s->basic_index("="))});
  easy.add_constraint_idx(rel, {0, 1});
  CHECK(map.apply(easy).size() == 1);

  // Two rotated copies on one window still leave consistent branches.
  Instance pair = delta_local(s, {"x", "y", "z"}, {0, 1, 2});
  int drel = pair.rel_index("delta");
  pair.add_constraint_idx(drel, {1, 2, 0});
  auto both = map.apply(pair);
  CHECK(!both.empty());
  CHECK(all_branch_certs(both) == enumerate_certificates(pair));

  Instance wide = delta_local(s, {"a", "b", "c", "d"}, {0, 1, 2});
  CHECK_THROWS_AS((void)map.apply(wide), RadiusExceeded);
}

TEST_CASE("application commutes with renaming the local variables") {
  BranchingMap map = make_delta_map();
  auto s = map.scheme;
  Instance a = delta_local(s, {"a1", "a2", "a3"}, {0, 1, 2});
  Instance b = delta_local(s, {"b1", "b2", "b3"}, {0, 1, 2});
  auto ba = map.apply(a);
  auto bb = map.apply(b);
  REQUIRE(ba.size() == bb.size());
  for (std::size_t i = 0; i < ba.size(); ++i) {
    std::string sa = serialize_instance(ba[i]);
    std::string sb = serialize_instance(bb[i]);
    // Identical up to the variable names.
    for (char d : {'1', '2', '3'}) {
      std::string from = std::string("a") + d, to = std::string("b") + d;
      for (std::size_t pos = 0; (pos = sa.find(from, pos)) != std::string::npos;
           pos += to.size())
        sa.replace(pos, from.size(), to);
    }
    CHECK(sa == sb);
  }
}

TEST_CASE("definition files are validated") {
  SchemePtr s = load_scheme("eq");
  Language source(s);
  source.add("delta", build_delta());

  auto defs = parse_definitions(
      R"({"delta": [[["=",0,1],["!=",0,2]], [["!=",0,1],["=",1,2]]]})", source);
  REQUIRE(defs.count("delta"));
  CHECK(defs["delta"].clauses.size() == 2);
  BranchingMap map = synthesize(source, basics_language(s), 3, defs);
  CHECK(map.apply(delta_local(s, {"x", "y", "z"}, {0, 1, 2})).size() == 2);

  CHECK_THROWS_AS(
      parse_definitions(R"({"delta": [[["not","=",0,1]]]})", source),
      NegationInDefinition);
  CHECK_THROWS_AS(parse_definitions(R"({"other": [[["=",0,1]]]})", source),
                  UnknownRelation);
  CHECK_THROWS_AS(parse_definitions(R"({"delta": [[["=",0,5]]]})", source),
                  ParseError);

  CHECK_THROWS_AS((void)synthesize(source, basics_language(s), 3, {}),
                  MissingDefinition);
  CHECK_THROWS_AS((void)synthesize(source, basics_language(s), 2, defs),
                  RadiusTooSmall);
}

TEST_CASE("union sources expand with one clause per basic") {
  SchemePtr s = load_scheme("rcc5");
  Language source(s);
  Mask m = bit(s->basic_index("PP")) | bit(s->basic_index("PPi")) |
           bit(s->basic_index("DR"));
  source.add("tri", UnionRel{m});
  BranchingMap map =
      synthesize_from_backdoor_triple(source, basics_language(s), 2);
  Instance local;
  local.scheme = s;
  local.add_var("a");
  local.add_var("b");
  int rel = local.add_rel("tri", UnionRel{m});
  local.add_constraint_idx(rel, {0, 1});
  auto branches = map.apply(local);
  CHECK(branches.size() == 3);
  CHECK(map.branching_factor() == 3);
  CHECK(all_branch_certs(branches) == enumerate_certificates(local));
}
