#include <doctest.h>

#include "scsp/gadgets.hpp"
#include "scsp/simpmap.hpp"

using namespace scsp;

namespace {

DnfRel delta_rel(const PartitionScheme& s) {
  int eq = s.basic_index("=");
  int ne = s.basic_index("!=");
  DnfRel rel;
  rel.arity = 3;
  rel.clauses = {{Atom{0, 1, eq}, Atom{0, 2, ne}},
                 {Atom{0, 1, ne}, Atom{1, 2, eq}}};
  return rel;
}

SimplificationMap delta_map() {
  SchemePtr s = load_scheme("eq");
  Language source(s);
  source.add("delta", delta_rel(*s));
  return compute_simpmap(source, basics_language(s));
}

Instance delta_usage(SchemePtr s, std::vector<std::string> scope) {
  Instance inst;
  inst.scheme = s;
  inst.add_var("x");
  inst.add_var("y");
  inst.add_var("z");
  int rel = inst.add_rel("delta", delta_rel(*s));
  std::vector<int> idx;
  for (const auto& v : scope) idx.push_back(inst.var_index(v));
  inst.add_constraint_idx(rel, idx);
  return inst;
}

}  // namespace

TEST_CASE("reduced keys print and parse canonically") {
  auto s = load_scheme("eq");
  ReducedKey key;
  key.rel_id = "delta";
  key.pattern = {0, 1, 2};
  key.nslots = 3;
  key.alpha = {s->basic_index("="), -1, -1};
  std::string text = key.to_string(*s);
  ReducedKey back = parse_key(*s, text);
  CHECK(back.to_string(*s) == text);
  CHECK(back.pattern == key.pattern);
  CHECK(back.alpha == key.alpha);
  CHECK(key.pair_index(0, 1) == 0);
  CHECK(key.pair_index(0, 2) == 1);
  CHECK(key.pair_index(1, 2) == 2);
}

TEST_CASE("union constraints key by semantics, not by name") {
  auto s = load_scheme("rcc5");
  Mask m = bit(s->basic_index("DR")) | bit(s->basic_index("PO"));
  CHECK(relation_id(*s, "whatever", UnionRel{m}) == "u:DR+PO");
  CHECK(relation_id(*s, "also", UnionRel{m}) ==
        relation_id(*s, "other", UnionRel{m}));
  DnfRel d = delta_rel(*load_scheme("eq"));
  CHECK(relation_id(*s, "delta", d) == "delta");
}

TEST_CASE("either-or map has the expected entries") {
  SimplificationMap map = delta_map();
  auto s = map.scheme;
  CHECK(map.covers("delta"));
  CHECK(!map.covers("nonexistent"));

  // delta(x,y,z) with alpha(x,y) = "=" simplifies to {x=y, x!=z}.
  {
    Instance inst = delta_usage(s, {"x", "y", "z"});
    PairAssignment alpha(s);
    alpha.set(0, 1, s->basic_index("="));
    auto local = map.lookup(inst, inst.constraints[0], alpha);
    REQUIRE(local.has_value());
    CHECK(local->constraints.size() == 2);
    Instance expected;
    expected.scheme = s;
    expected.add_var("x");
    expected.add_var("y");
    expected.add_var("z");
    int eqr = expected.add_rel("e", UnionRel{bit(s->basic_index("="))});
    int ner = expected.add_rel("n", UnionRel{bit(s->basic_index("!="))});
    expected.add_constraint_idx(eqr, {0, 1});
    expected.add_constraint_idx(ner, {0, 2});
    CHECK(equivalent(*local, expected));
    // And it matches the reduced constraint it replaces.
    CHECK(equivalent(*local, reduce_constraint(inst, inst.constraints[0], alpha)));
  }

  // Repeating the first two arguments forces the first clause: delta(x,x,z)
  // is equivalent to x != z even with no alpha.
  {
    Instance inst = delta_usage(s, {"x", "x", "z"});
    PairAssignment alpha(s);
    auto local = map.lookup(inst, inst.constraints[0], alpha);
    REQUIRE(local.has_value());
    Instance expected;
    expected.scheme = s;
    expected.add_var("x");
    expected.add_var("z");
    int ner = expected.add_rel("n", UnionRel{bit(s->basic_index("!="))});
    expected.add_constraint_idx(ner, {0, 1});
    CHECK(equivalent(*local, expected));
  }

  // With all arguments distinct and no alpha the entry is undefined.
  {
    Instance inst = delta_usage(s, {"x", "y", "z"});
    PairAssignment alpha(s);
    CHECK(!map.lookup(inst, inst.constraints[0], alpha).has_value());
  }

  // Collapsing all three arguments is unsatisfiable.
  {
    Instance inst = delta_usage(s, {"x", "x", "x"});
    PairAssignment alpha(s);
    ReducedKey key = make_key(inst, inst.constraints[0], alpha);
    auto entry = map.entry_for(key);
    REQUIRE(entry.has_value());
    CHECK(entry->kind == EntryKind::Unsat);
    auto local = map.lookup(inst, inst.constraints[0], alpha);
    REQUIRE(local.has_value());
    CHECK(!find_certificate(*local).has_value());
  }

  ReducedKey unknown;
  unknown.rel_id = "nonexistent";
  unknown.pattern = {0, 1};
  unknown.nslots = 2;
  unknown.alpha = {-1};
  CHECK_THROWS_AS((void)map.entry_for(unknown), MissingRelationFamily);
}

TEST_CASE("single-pair union keys resolve to single atoms or unsat") {
  SchemePtr s = load_scheme("rcc5");
  Language source = all_unions(s);
  Language target = basics_language(s);
  SimplificationMap map = compute_simpmap(source, target);
  const int m = s->size();
  for (Mask mask = 1; mask <= s->full_mask(); ++mask) {
    std::string rid = "u:" + s->mask_name(mask);
    for (int b = -1; b < m; ++b) {
      ReducedKey key;
      key.rel_id = rid;
      key.pattern = {0, 1};
      key.nslots = 2;
      key.alpha = {b};
      auto entry = map.entry_for(key);
      if (b < 0) {
        // No alpha: defined for the basics themselves and for the trivial
        // full union, which the empty formula expresses.
        if (popcount(mask) == 1) {
          REQUIRE(entry.has_value());
          REQUIRE(entry->atoms.size() == 1);
          CHECK(entry->atoms[0].rel == s->mask_name(mask));
        } else if (mask == s->full_mask()) {
          REQUIRE(entry.has_value());
          CHECK(entry->kind == EntryKind::Formula);
          CHECK(entry->atoms.empty());
        } else {
          CHECK(!entry.has_value());
        }
      } else if (mask & bit(b)) {
        // Alpha picks a surviving basic: the entry is that one atom.
        REQUIRE(entry.has_value());
        CHECK(entry->kind == EntryKind::Formula);
        REQUIRE(entry->atoms.size() == 1);
        CHECK(entry->atoms[0].rel == s->basics[b]);
      } else {
        REQUIRE(entry.has_value());
        CHECK(entry->kind == EntryKind::Unsat);
      }
    }
  }
}

TEST_CASE("computed all-equal-or-all-distinct entries match the built-in rule") {
  SchemePtr s = load_scheme("eq");
  Language source(s);
  source.add("R_3", build_rk(3));
  SimplificationMap generic = compute_simpmap(source, basics_language(s));
  SimplificationMap builtin = make_builtin_rk_map(s);

  int compared = 0;
  for (const auto& [text, entry] : generic.entries) {
    ReducedKey key = parse_key(*s, text);
    if (key.rel_id != "R_3") continue;
    auto rule = builtin_rk_entry(key, *s);
    REQUIRE(rule.has_value());
    // The rule may express an unsatisfiable key as contradictory atoms, so
    // compare the certificate sets instead of the entry shapes.
    CHECK(equivalent(generic.entry_instance(key, entry),
                     builtin.entry_instance(key, *rule)));
    ++compared;
  }
  CHECK(compared > 0);

  // The generic map must be undefined exactly where the rule is: the
  // all-distinct, alpha-free key has no fixed-pair-free reformulation.
  ReducedKey open_key;
  open_key.rel_id = "R_3";
  open_key.pattern = {0, 1, 2};
  open_key.nslots = 3;
  open_key.alpha = {-1, -1, -1};
  CHECK(!generic.entry_for(open_key).has_value());
  CHECK(!builtin_rk_entry(open_key, *s).has_value());
}

TEST_CASE("maps serialize, reload, and re-verify") {
  SimplificationMap map = delta_map();
  std::string text = map.serialize();
  SimplificationMap back = load_map(text);  // load_map re-verifies entries
  CHECK(back.scheme->name == "eq");
  CHECK(back.entries.size() == map.entries.size());
  CHECK(back.serialize() == text);
  CHECK_NOTHROW(verify_map(back, 1000, 1));
}

TEST_CASE("corrupted map entries fail verification") {
  SimplificationMap map = delta_map();
  for (auto& [text, entry] : map.entries) {
    if (entry.kind != EntryKind::Formula || entry.atoms.empty()) continue;
    entry.kind = EntryKind::Unsat;  // claim a satisfiable entry is unsat
    entry.atoms.clear();
    break;
  }
  CHECK_THROWS_AS(verify_map(map, 1000, 1), Error);
}
