#include "scsp/gadgets.hpp"

#include <algorithm>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace scsp {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

// rng() % n, kept in-house so generated instances do not depend on the
// standard library's distribution internals.
int draw(std::mt19937& rng, int n) { return static_cast<int>(rng() % n); }

template <class T>
void shuffle_vec(std::vector<T>& v, std::mt19937& rng) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
    std::swap(v[i], v[draw(rng, i + 1)]);
}

}  // namespace

HittingSetInstance parse_hitting_set(const std::string& json_text) {
  json j = parse_json(json_text);
  HittingSetInstance hs;
  try {
    for (const auto& u : j.at("universe")) hs.universe.push_back(u);
    for (const auto& jf : j.at("family")) {
      std::vector<std::string> f;
      for (const auto& u : jf) f.push_back(u);
      hs.family.push_back(std::move(f));
    }
    hs.budget = j.at("budget");
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  std::set<std::string> uni(hs.universe.begin(), hs.universe.end());
  if (uni.size() != hs.universe.size())
    throw ParseError("duplicate universe elements");
  for (const auto& f : hs.family) {
    if (f.empty()) throw ParseError("empty family member");
    for (const auto& u : f)
      if (!uni.count(u)) throw ParseError("family member outside universe: " + u);
    if (std::set<std::string>(f.begin(), f.end()).size() != f.size())
      throw ParseError("duplicate element in family member");
  }
  return hs;
}

Graph parse_graph(const std::string& json_text) {
  json j = parse_json(json_text);
  Graph g;
  try {
    for (const auto& v : j.at("vertices")) g.vertices.push_back(v);
    std::set<std::pair<int, int>> seen;
    for (const auto& je : j.at("edges")) {
      if (je.size() != 2) throw ParseError("edge must have two endpoints");
      std::string a = je[0], b = je[1];
      int ia = -1, ib = -1;
      for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
        if (g.vertices[i] == a) ia = i;
        if (g.vertices[i] == b) ib = i;
      }
      if (ia < 0 || ib < 0) throw ParseError("edge endpoint not a vertex");
      if (ia == ib) throw ParseError("self-loop on " + a);
      auto e = std::minmax(ia, ib);
      if (!seen.insert({e.first, e.second}).second)
        throw ParseError("duplicate edge " + a + "-" + b);
      g.edges.push_back({e.first, e.second});
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return g;
}

DnfRel build_rk(int k) {
  if (k < 2) throw KTooSmall("R_k needs k >= 2, got " + std::to_string(k));
  SchemePtr eq = load_scheme("eq");
  int beq = eq->basic_index("=");
  int bneq = eq->basic_index("!=");
  DnfRel rel;
  rel.arity = k;
  std::vector<Atom> all_equal, all_distinct;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      all_equal.push_back(Atom{i, j, beq});
      all_distinct.push_back(Atom{i, j, bneq});
    }
  rel.clauses.push_back(std::move(all_equal));
  rel.clauses.push_back(std::move(all_distinct));
  return normalize_dnf(std::move(rel));
}

BackdoorDetectionInput hitting_set_reduction(const HittingSetInstance& hs) {
  BackdoorDetectionInput out;
  out.k = hs.budget;
  Instance& inst = out.instance;
  inst.scheme = load_scheme("eq");
  for (const auto& u : hs.universe) inst.add_var(u);
  std::string hub = "hub";
  while (inst.var_index_or(hub, -1) >= 0) hub += "'";
  inst.add_var(hub);
  for (const auto& f : hs.family) {
    int k = static_cast<int>(f.size()) + 1;
    int rel = inst.add_rel("R_" + std::to_string(k), build_rk(k));
    std::vector<int> scope;
    for (const auto& u : f) scope.push_back(inst.var_index(u));
    scope.push_back(inst.var_index(hub));
    inst.add_constraint_idx(rel, std::move(scope));
  }
  return out;
}

SidedoorDetectionInput edge_partition_reduction(const Graph& g) {
  if (g.edges.size() % 3 != 0)
    throw BadEdgeCount(std::to_string(g.edges.size()) +
                       " edges, not divisible by 3");
  SidedoorDetectionInput out;
  out.r = 3;
  out.k = static_cast<int>(g.edges.size()) / 3;
  Instance& inst = out.instance;
  inst.scheme = load_scheme("rcc5");
  for (const auto& v : g.vertices) inst.add_var(v);
  Mask mask =
      bit(inst.scheme->basic_index("PP")) | bit(inst.scheme->basic_index("PPi"));
  int rel = inst.add_rel(inst.scheme->mask_name(mask), UnionRel{mask});
  for (const auto& [a, b] : g.edges) inst.add_constraint_idx(rel, {a, b});
  return out;
}

namespace {

int add_union_constraint(Instance& inst, Mask mask, int x, int y) {
  int rel = inst.add_rel(inst.scheme->mask_name(mask), UnionRel{mask});
  inst.add_constraint_idx(rel, {x, y});
  return rel;
}

Planted plant_backdoor(SchemePtr scheme, int n, const DoorSpec& spec,
                       std::mt19937& rng) {
  int npairs = n * (n - 1) / 2;
  if (spec.size > npairs)
    throw SpecInfeasible("cannot plant " + std::to_string(spec.size) +
                         " pairs among " + std::to_string(n) + " variables");
  Planted out;
  out.instance.scheme = scheme;
  for (int i = 0; i < n; ++i) out.instance.add_var("x" + std::to_string(i));
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  shuffle_vec(pairs, rng);
  std::set<std::pair<int, int>> door(pairs.begin(), pairs.begin() + spec.size);

  // Planted pairs get arbitrary unions (non-basic, non-full when the scheme
  // has one); everything else stays basic so the door covers all the
  // unsimplifiable constraints.
  std::vector<Mask> hard;
  for (Mask m = 1; m < scheme->full_mask(); ++m)
    if (popcount(m) >= 2) hard.push_back(m);
  if (hard.empty()) hard.push_back(scheme->full_mask());
  for (auto [i, j] : pairs) {
    if (door.count({i, j})) {
      add_union_constraint(out.instance, hard[draw(rng, hard.size())], i, j);
      out.backdoor.push_back({out.instance.vars[i], out.instance.vars[j]});
    } else if (draw(rng, 1000) < static_cast<int>(spec.density * 1000)) {
      add_union_constraint(out.instance, bit(draw(rng, scheme->size())), i, j);
    }
  }
  std::sort(out.backdoor.begin(), out.backdoor.end());
  return out;
}

Planted plant_sidedoor(SchemePtr scheme, int n, const DoorSpec& spec,
                       std::mt19937& rng) {
  if (scheme->name != "rcc5")
    throw SpecInfeasible("sidedoor planting is defined over rcc5");
  if (n % 3 != 0 || n == 0)
    throw SpecInfeasible("sidedoor planting needs n divisible by 3");
  Planted out;
  out.radius = 3;
  out.instance.scheme = scheme;
  for (int i = 0; i < n; ++i) out.instance.add_var("x" + std::to_string(i));

  Mask pp = bit(scheme->basic_index("PP"));
  Mask ppi = bit(scheme->basic_index("PPi"));
  Mask dr = bit(scheme->basic_index("DR"));
  Mask eq = bit(scheme->basic_index("EQ"));
  std::vector<Mask> excluded = {pp | ppi, pp | ppi | dr, pp | ppi | eq,
                                pp | ppi | dr | eq};
  std::vector<Mask> tractable;
  for (Mask m = 1; m <= scheme->full_mask(); ++m)
    if (std::find(excluded.begin(), excluded.end(), m) == excluded.end())
      tractable.push_back(m);

  for (int t = 0; t < n / 3; ++t) {
    std::vector<std::string> set;
    for (int d = 0; d < 3; ++d) set.push_back(out.instance.vars[3 * t + d]);
    out.sidedoor_sets.push_back(set);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        add_union_constraint(out.instance,
                             excluded[draw(rng, excluded.size())], 3 * t + a,
                             3 * t + b);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (i / 3 == j / 3) continue;
      if (draw(rng, 1000) < static_cast<int>(spec.density * 1000))
        add_union_constraint(out.instance,
                             tractable[draw(rng, tractable.size())], i, j);
    }
  return out;
}

}  // namespace

Planted generate_planted(SchemePtr scheme, int n, const DoorSpec& spec,
                         unsigned seed) {
  if (n < 1) throw SpecInfeasible("need at least one variable");
  std::mt19937 rng(seed);
  if (spec.kind == DoorSpec::Kind::Backdoor)
    return plant_backdoor(scheme, n, spec, rng);
  return plant_sidedoor(scheme, n, spec, rng);
}

}  // namespace scsp
