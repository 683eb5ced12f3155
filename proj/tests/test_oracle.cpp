#include <doctest.h>

#include <random>

#include "scsp/oracle.hpp"

using namespace scsp;

namespace {

Instance empty_instance(const char* scheme, std::initializer_list<const char*> vars) {
  Instance inst;
  inst.scheme = load_scheme(scheme);
  for (const char* v : vars) inst.add_var(v);
  return inst;
}

int add_basic(Instance& inst, const char* basic) {
  return inst.add_rel(std::string("basic:") + basic,
                      UnionRel{bit(inst.scheme->basic_index(basic))});
}

// y lies strictly between x and z.
int add_between(Instance& inst) {
  int lt = inst.scheme->basic_index("<");
  int gt = inst.scheme->basic_index(">");
  DnfRel rel;
  rel.arity = 3;
  rel.clauses = {{Atom{0, 1, lt}, Atom{1, 2, lt}},
                 {Atom{0, 1, gt}, Atom{1, 2, gt}}};
  return inst.add_rel("between", rel);
}

int add_delta(Instance& inst) {
  int eq = inst.scheme->basic_index("=");
  int ne = inst.scheme->basic_index("!=");
  DnfRel rel;
  rel.arity = 3;
  rel.clauses = {{Atom{0, 1, eq}, Atom{0, 2, ne}},
                 {Atom{0, 1, ne}, Atom{1, 2, eq}}};
  return inst.add_rel("delta", rel);
}

}  // namespace

TEST_CASE("algebraic closure refines and detects emptiness") {
  auto s = load_scheme("point");
  Network net = Network::full(*s, 3);
  int lt = s->basic_index("<");
  net.at(0, 1) = bit(lt);
  net.at(1, 0) = s->converse_mask(bit(lt));
  net.at(1, 2) = bit(lt);
  net.at(2, 1) = s->converse_mask(bit(lt));
  REQUIRE(aclosure(*s, net));
  CHECK(net.at(0, 2) == bit(lt));  // transitivity propagated

  net.at(0, 2) = bit(s->basic_index(">"));
  net.at(2, 0) = bit(lt);
  CHECK(!aclosure(*s, net));
}

TEST_CASE("chained betweenness is satisfiable over the ordered points") {
  Instance inst = empty_instance("point", {"x", "y", "z", "w"});
  int rel = add_between(inst);
  inst.add_constraint_idx(rel, {0, 1, 2});
  inst.add_constraint_idx(rel, {1, 2, 3});
  auto cert = find_certificate(inst);
  REQUIRE(cert.has_value());
  CHECK(certificate_satisfies(*cert, inst));
  CHECK(brute_force_order(inst));

  // Wrapping the chain around is not.
  inst.add_constraint_idx(rel, {2, 3, 0});
  inst.add_constraint_idx(rel, {3, 0, 1});
  CHECK(!find_certificate(inst).has_value());
  CHECK(!brute_force_order(inst));
}

TEST_CASE("collapsing all three arguments kills the either-or relation") {
  Instance inst = empty_instance("eq", {"x"});
  int rel = add_delta(inst);
  inst.add_constraint_idx(rel, {0, 0, 0});
  CHECK(!find_certificate(inst).has_value());
  CHECK(enumerate_certificates(inst).empty());
  CHECK(!brute_force_equality(inst));
}

TEST_CASE("unconstrained pair enumerates one certificate per basic") {
  Instance inst = empty_instance("rcc5", {"a", "b"});
  auto certs = enumerate_certificates(inst);
  CHECK(certs.size() == 5);
  Mask seen = 0;
  for (const auto& c : certs) {
    CHECK(c.at(0, 0) == inst.scheme->basic_index("EQ"));
    CHECK(c.at(1, 0) == inst.scheme->converse[c.at(0, 1)]);
    seen |= bit(c.at(0, 1));
    CHECK(certificate_satisfies(c, inst));
  }
  CHECK(seen == inst.scheme->full_mask());
}

TEST_CASE("certificate decoding rejects violated constraints") {
  Instance inst = empty_instance("rcc5", {"a", "b"});
  int pp = add_basic(inst, "PP");
  inst.add_constraint_idx(pp, {0, 1});
  auto cert = find_certificate(inst);
  REQUIRE(cert.has_value());
  CHECK(certificate_satisfies(*cert, inst));

  Certificate wrong = *cert;
  wrong.at(0, 1) = inst.scheme->basic_index("DR");
  wrong.at(1, 0) = inst.scheme->basic_index("DR");
  CHECK(!certificate_satisfies(wrong, inst));
}

TEST_CASE("equivalence compares certificate sets") {
  Instance a = empty_instance("eq", {"x", "y", "z"});
  int rel = add_delta(a);
  int eqr = add_basic(a, "=");
  a.add_constraint_idx(rel, {0, 1, 2});
  a.add_constraint_idx(eqr, {0, 1});

  // x=y forces the first clause, so x=y plus x!=z is the same relation.
  Instance b = empty_instance("eq", {"x", "y", "z"});
  int eqr2 = add_basic(b, "=");
  int ner2 = add_basic(b, "!=");
  b.add_constraint_idx(eqr2, {0, 1});
  b.add_constraint_idx(ner2, {0, 2});
  CHECK(equivalent(a, b));

  Instance c = empty_instance("eq", {"x", "y", "z"});
  int eqr3 = add_basic(c, "=");
  c.add_constraint_idx(eqr3, {0, 1});
  CHECK(!equivalent(a, c));

  Instance d = empty_instance("eq", {"x", "y"});
  CHECK_THROWS_AS((void)equivalent(a, d), VariableSetMismatch);
}

TEST_CASE("enumeration respects the cap") {
  Instance inst = empty_instance("rcc5", {"v0", "v1", "v2", "v3", "v4", "v5"});
  CHECK_THROWS_AS((void)enumerate_certificates(inst), CapExceeded);
  OracleOptions opts;
  opts.exhaustive_cap = 6;
  CHECK_NOTHROW((void)enumerate_certificates(inst, opts));
}

TEST_CASE("certificate search agrees with the concrete-domain checks") {
  std::mt19937 rng(12345);
  auto draw = [&](int n) { return static_cast<int>(rng() % n); };

  for (int trial = 0; trial < 300; ++trial) {
    const bool use_eq = trial % 2 == 0;
    Instance inst = empty_instance(use_eq ? "eq" : "point", {"a", "b", "c", "d"});
    const int m = inst.scheme->size();
    int ncons = 2 + draw(5);
    for (int c = 0; c < ncons; ++c) {
      Mask mask = static_cast<Mask>(1 + draw((1 << m) - 1));
      int rel = inst.add_rel("u" + std::to_string(c), UnionRel{mask});
      int x = draw(4), y = draw(4);
      inst.add_constraint_idx(rel, {x, y});
    }
    bool oracle_sat = find_certificate(inst).has_value();
    bool concrete_sat =
        use_eq ? brute_force_equality(inst) : brute_force_order(inst);
    CHECK(oracle_sat == concrete_sat);
  }
}
