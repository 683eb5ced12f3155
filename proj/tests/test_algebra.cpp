#include <doctest.h>

#include "scsp/algebra.hpp"

using namespace scsp;

namespace {

Mask mask_of(const PartitionScheme& s, std::initializer_list<const char*> bs) {
  Mask m = 0;
  for (const char* b : bs) m |= bit(s.basic_index(b));
  return m;
}

void check_table_laws(const PartitionScheme& s) {
  const int m = s.size();
  for (int i = 0; i < m; ++i) {
    CHECK(s.converse[s.converse[i]] == i);
    if (s.identity >= 0) {
      CHECK(s.compose_mask(bit(s.identity), bit(i)) == bit(i));
      CHECK(s.compose_mask(bit(i), bit(s.identity)) == bit(i));
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      CHECK(s.converse_mask(s.composition[i][j]) ==
            s.composition[s.converse[j]][s.converse[i]]);
}

}  // namespace

TEST_CASE("built-in schemes pass validation and the table laws") {
  for (const char* name : {"rcc5", "point", "eq", "finite:3", "finite:4"}) {
    auto s = load_scheme(name);
    CHECK_NOTHROW(s->validate());
    check_table_laws(*s);
  }
}

TEST_CASE("rcc5 composition entries") {
  auto s = load_scheme("rcc5");
  CHECK(s->compose_mask(mask_of(*s, {"PP"}), mask_of(*s, {"PP"})) ==
        mask_of(*s, {"PP"}));
  CHECK(s->compose_mask(mask_of(*s, {"DR"}), mask_of(*s, {"DR"})) ==
        s->full_mask());
  CHECK(s->compose_mask(mask_of(*s, {"PP"}), mask_of(*s, {"PPi"})) ==
        s->full_mask());
  CHECK(s->compose_mask(mask_of(*s, {"PPi"}), mask_of(*s, {"PP"})) ==
        mask_of(*s, {"PO", "PP", "PPi", "EQ"}));
  CHECK(s->compose_mask(mask_of(*s, {"PO"}), mask_of(*s, {"PP"})) ==
        mask_of(*s, {"PO", "PP"}));
  CHECK(s->converse_mask(mask_of(*s, {"PP", "DR"})) ==
        mask_of(*s, {"PPi", "DR"}));
}

TEST_CASE("point and eq composition entries") {
  auto p = load_scheme("point");
  CHECK(p->compose_mask(mask_of(*p, {"<"}), mask_of(*p, {"<"})) ==
        mask_of(*p, {"<"}));
  CHECK(p->compose_mask(mask_of(*p, {"<"}), mask_of(*p, {">"})) ==
        p->full_mask());
  auto e = load_scheme("eq");
  CHECK(e->compose_mask(mask_of(*e, {"!="}), mask_of(*e, {"!="})) ==
        e->full_mask());
}

TEST_CASE("finite scheme identity covers the diagonal blocks") {
  auto f = load_scheme("finite:3");
  CHECK(f->size() == 9);
  CHECK(f->identity == -1);
  CHECK(popcount(f->identity_mask) == 3);
  // R_ij composed with R_jk is R_ik; mismatched inner indices vanish.
  int r01 = f->basic_index("R_12");
  int r12 = f->basic_index("R_23");
  int r02 = f->basic_index("R_13");
  CHECK(f->compose_mask(bit(r01), bit(r12)) == bit(r02));
  CHECK(f->compose_mask(bit(r01), bit(r02)) == 0);
}

TEST_CASE("malformed tables are rejected") {
  auto s = load_scheme("rcc5");
  PartitionScheme broken = *s;
  broken.converse[broken.basic_index("PP")] = broken.basic_index("PP");
  CHECK_THROWS_AS(broken.validate(), MalformedTable);
  PartitionScheme broken2 = *s;
  // Breaking one entry of a non-self-converse pair violates the
  // converse-of-composition law.
  broken2.composition[broken2.basic_index("PP")][broken2.basic_index("PO")] = 0;
  CHECK_THROWS_AS(broken2.validate(), MalformedTable);
}

TEST_CASE("unknown scheme names fail cleanly") {
  CHECK_THROWS_AS(load_scheme("finite:0"), UnknownScheme);
  CHECK_THROWS(load_scheme("/nonexistent/scheme.json"));
}

TEST_CASE("negation elimination expands to the other basics") {
  auto s = load_scheme("rcc5");
  auto f = Formula::mk_not(Formula::mk_atom(0, 1, s->basic_index("EQ")));
  DnfRel d = eliminate_negation(f, 2, *s);
  CHECK(d.clauses.size() == 4);
  Mask seen = 0;
  for (const auto& clause : d.clauses) {
    REQUIRE(clause.size() == 1);
    seen |= bit(clause[0].basic);
  }
  CHECK(seen == (s->full_mask() & ~bit(s->basic_index("EQ"))));

  // Double negation returns the original atom.
  auto g = Formula::mk_not(Formula::mk_not(Formula::mk_atom(0, 1, 2)));
  DnfRel d2 = eliminate_negation(g, 2, *s);
  REQUIRE(d2.clauses.size() == 1);
  REQUIRE(d2.clauses[0].size() == 1);
  CHECK(d2.clauses[0][0].basic == 2);
}

TEST_CASE("dnf normalization drops duplicates and subsumed clauses") {
  DnfRel d;
  d.arity = 2;
  d.clauses = {{Atom{0, 1, 0}, Atom{0, 1, 1}},
               {Atom{0, 1, 0}},
               {Atom{0, 1, 1}, Atom{0, 1, 0}, Atom{0, 1, 1}}};
  DnfRel n = normalize_dnf(d);
  REQUIRE(n.clauses.size() == 1);
  CHECK(n.clauses[0] == std::vector<Atom>{Atom{0, 1, 0}});
}

TEST_CASE("mask names are canonical") {
  auto s = load_scheme("rcc5");
  CHECK(s->mask_name(0) == "empty");
  CHECK(s->mask_name(bit(s->basic_index("DR")) | bit(s->basic_index("PP"))) ==
        "DR+PP");
}
