#include "scsp/branchmap.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace scsp {

namespace {

std::string slot_name(int s) { return "s" + std::to_string(s); }

Relation resolve_atom(const std::string& name, const Language& target,
                      const PartitionScheme& scheme) {
  int idx = target.index_or(name, -1);
  if (idx >= 0) return target.rels[idx];
  int b = scheme.basic_index_or(name, -1);
  if (b >= 0) return UnionRel{bit(b)};
  throw UnknownRelation(name);
}

int resolved_cap(const OracleOptions& opts, const PartitionScheme& scheme) {
  if (opts.exhaustive_cap >= 0) return opts.exhaustive_cap;
  return scheme.size() <= 3 ? 7 : 5;
}

// Rebuilds the instance with constraints sorted by (relation name, scope)
// and exact duplicates removed, so identical branch sets serialize alike.
Instance sort_constraints(const Instance& inst) {
  Instance out;
  out.scheme = inst.scheme;
  out.vars = inst.vars;
  std::vector<std::pair<std::pair<std::string, std::vector<int>>, int>> order;
  for (int ci = 0; ci < static_cast<int>(inst.constraints.size()); ++ci)
    order.push_back(
        {{inst.rel_names[inst.constraints[ci].rel], inst.constraints[ci].scope},
         ci});
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end(),
                          [](const auto& a, const auto& b) {
                            return a.first == b.first;
                          }),
              order.end());
  for (const auto& [key, ci] : order) {
    const Constraint& c = inst.constraints[ci];
    int rel = out.add_rel(inst.rel_names[c.rel], inst.rels[c.rel]);
    out.add_constraint_idx(rel, c.scope);
  }
  return out;
}

}  // namespace

bool BranchingMap::in_target(const std::string& name,
                             const Relation& rel) const {
  if (const auto* u = std::get_if<UnionRel>(&rel))
    return target.index_of_mask(u->mask) >= 0;
  return target.contains(name);
}

std::vector<Instance> BranchingMap::expand(const Instance& inst) const {
  int pick = -1;
  for (int ci = 0; ci < static_cast<int>(inst.constraints.size()); ++ci) {
    const Constraint& c = inst.constraints[ci];
    if (!in_target(inst.rel_names[c.rel], inst.rels[c.rel])) {
      pick = ci;
      break;
    }
  }
  if (pick < 0) return {inst};

  const Constraint& c = inst.constraints[pick];
  std::string id = relation_id(*scheme, inst.rel_names[c.rel], inst.rels[c.rel]);
  auto it = defs.find(id);
  if (it == defs.end()) throw MissingDefinition(id);

  std::vector<Instance> out;
  for (const auto& clause : it->second.clauses) {
    Instance branch;
    branch.scheme = inst.scheme;
    branch.vars = inst.vars;
    for (int cj = 0; cj < static_cast<int>(inst.constraints.size()); ++cj) {
      if (cj == pick) continue;
      const Constraint& other = inst.constraints[cj];
      int rel = branch.add_rel(inst.rel_names[other.rel], inst.rels[other.rel]);
      branch.add_constraint_idx(rel, other.scope);
    }
    bool dead = false;
    for (const auto& atom : clause) {
      int x = c.scope[atom.i], y = c.scope[atom.j];
      Relation r = resolve_atom(atom.rel, target, *scheme);
      if (const auto* u = std::get_if<UnionRel>(&r); u && x == y) {
        if ((u->mask & scheme->identity_mask) == scheme->identity_mask)
          continue;  // tautology on the diagonal
        if ((u->mask & scheme->identity_mask) == 0) dead = true;
      }
      int rel = branch.add_rel(atom.rel, r);
      branch.add_constraint_idx(rel, {x, y});
    }
    if (dead) continue;
    if (!find_certificate(branch, oracle)) continue;  // prune
    for (auto& sub : expand(branch)) out.push_back(std::move(sub));
  }
  return out;
}

std::vector<Instance> BranchingMap::entry(const Instance& canonical) const {
  std::string key = serialize_instance(canonical);
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->entries.find(key);
    if (it != memo_->entries.end()) return it->second;
  }
  std::vector<Instance> branches;
  std::set<std::string> seen;
  for (auto& b : expand(canonical)) {
    Instance sorted = sort_constraints(b);
    if (seen.insert(serialize_instance(sorted)).second)
      branches.push_back(std::move(sorted));
  }

  if (verify_entries &&
      static_cast<int>(canonical.vars.size()) <=
          resolved_cap(oracle, *scheme)) {
    auto key_certs = enumerate_certificates(canonical, oracle);
    std::sort(key_certs.begin(), key_certs.end());
    std::vector<Certificate> branch_certs;
    for (const auto& b : branches) {
      auto cs = enumerate_certificates(b, oracle);
      branch_certs.insert(branch_certs.end(), cs.begin(), cs.end());
    }
    std::sort(branch_certs.begin(), branch_certs.end());
    branch_certs.erase(std::unique(branch_certs.begin(), branch_certs.end()),
                       branch_certs.end());
    if (key_certs != branch_certs)
      throw Error("branching map entry is not solution-preserving: " + key);
  }

  std::lock_guard<std::mutex> lock(memo_->mu);
  auto [it, inserted] = memo_->entries.emplace(key, std::move(branches));
  return it->second;
}

std::vector<Instance> BranchingMap::apply(const Instance& local) const {
  int k = static_cast<int>(local.vars.size());
  if (k > radius)
    throw RadiusExceeded(std::to_string(k) + " variables > radius " +
                         std::to_string(radius));
  if (local.scheme->name != scheme->name)
    throw SchemeMismatch(local.scheme->name + " vs " + scheme->name);

  std::vector<std::string> sorted_vars = local.vars;
  std::sort(sorted_vars.begin(), sorted_vars.end());
  auto slot_of = [&](int var) {
    for (int s = 0; s < k; ++s)
      if (sorted_vars[s] == local.vars[var]) return s;
    throw UnknownVariable(local.vars[var]);
  };

  Instance canonical;
  canonical.scheme = scheme;
  for (int s = 0; s < radius; ++s) canonical.add_var(slot_name(s));
  for (const auto& c : local.constraints) {
    std::string id =
        relation_id(*scheme, local.rel_names[c.rel], local.rels[c.rel]);
    int rel = canonical.add_rel(id, local.rels[c.rel]);
    std::vector<int> scope;
    for (int v : c.scope) scope.push_back(slot_of(v));
    canonical.add_constraint_idx(rel, std::move(scope));
  }
  canonical = sort_constraints(canonical);

  std::vector<Instance> out;
  for (const auto& b : entry(canonical)) {
    Instance renamed;
    renamed.scheme = local.scheme;
    renamed.vars = local.vars;
    for (const auto& c : b.constraints) {
      int rel = renamed.add_rel(b.rel_names[c.rel], b.rels[c.rel]);
      std::vector<int> scope;
      for (int v : c.scope) {
        if (v >= k)
          throw Error("branch constrains a padding slot: " + b.vars[v]);
        scope.push_back(renamed.var_index(sorted_vars[v]));
      }
      renamed.add_constraint_idx(rel, std::move(scope));
    }
    out.push_back(std::move(renamed));
  }
  return out;
}

int BranchingMap::branching_factor() const {
  std::lock_guard<std::mutex> lock(memo_->mu);
  int factor = 0;
  for (const auto& [key, branches] : memo_->entries)
    factor = std::max(factor, static_cast<int>(branches.size()));
  return factor;
}

std::string BranchingMap::dump() const {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["radius"] = radius;
  j["provenance"] = provenance;
  ordered_json jentries = ordered_json::array();
  std::lock_guard<std::mutex> lock(memo_->mu);
  for (const auto& [key, branches] : memo_->entries) {
    ordered_json je;
    je["key"] = ordered_json::parse(key);
    ordered_json jb = ordered_json::array();
    for (const auto& b : branches)
      jb.push_back(ordered_json::parse(serialize_instance(b)));
    je["branches"] = jb;
    jentries.push_back(je);
  }
  j["entries"] = jentries;
  return j.dump(2) + "\n";
}

std::map<std::string, Definition> parse_definitions(const std::string& json_text,
                                                    const Language& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  std::map<std::string, Definition> defs;
  try {
    for (const auto& [name, jclauses] : j.items()) {
      int idx = source.index_or(name, -1);
      if (idx < 0) throw UnknownRelation(name);
      Definition def;
      def.arity = relation_arity(source.rels[idx]);
      for (const auto& jclause : jclauses) {
        std::vector<SimpAtom> clause;
        for (const auto& jatom : jclause) {
          if (jatom.size() == 4 && jatom[0] == "not")
            throw NegationInDefinition(name);
          if (jatom.size() != 3)
            throw ParseError("definition atom must be [rel, i, j]");
          SimpAtom atom{jatom[0], jatom[1], jatom[2]};
          if (atom.i < 0 || atom.i >= def.arity || atom.j < 0 ||
              atom.j >= def.arity)
            throw ParseError("atom position out of range in definition of " +
                             name);
          clause.push_back(std::move(atom));
        }
        if (clause.empty()) throw ParseError("empty clause in " + name);
        def.clauses.push_back(std::move(clause));
      }
      if (def.clauses.empty()) throw ParseError("no clauses for " + name);
      defs[relation_id(*source.scheme, name, source.rels[idx])] =
          std::move(def);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return defs;
}

BranchingMap synthesize(const Language& source, const Language& target,
                        int radius, std::map<std::string, Definition> defs) {
  if (!source.scheme || !target.scheme ||
      source.scheme->name != target.scheme->name)
    throw SchemeMismatch("branching map languages disagree on scheme");
  BranchingMap map;
  map.scheme = source.scheme;
  map.radius = radius;
  map.target = target;
  map.provenance = "synthesized";
  for (int s = 0; s < source.size(); ++s) {
    if (map.in_target(source.names[s], source.rels[s])) continue;
    int arity = relation_arity(source.rels[s]);
    if (arity > radius)
      throw RadiusTooSmall(source.names[s] + " has arity " +
                           std::to_string(arity) + " > radius " +
                           std::to_string(radius));
    std::string id = relation_id(*source.scheme, source.names[s],
                                 source.rels[s]);
    if (!defs.count(id)) throw MissingDefinition(id);
    if (defs.at(id).arity != arity)
      throw ArityMismatch("definition of " + id);
  }
  map.defs = std::move(defs);
  return map;
}

BranchingMap synthesize_from_backdoor_triple(const Language& source,
                                             const Language& target,
                                             int radius) {
  SchemePtr scheme = source.scheme;
  std::map<std::string, Definition> defs;
  int max_arity = 2;
  for (int s = 0; s < source.size(); ++s)
    max_arity = std::max(max_arity, relation_arity(source.rels[s]));
  if (radius < max_arity)
    throw RadiusTooSmall("radius " + std::to_string(radius) +
                         " < max(2, arity) = " + std::to_string(max_arity));
  for (int s = 0; s < source.size(); ++s) {
    std::string id = relation_id(*scheme, source.names[s], source.rels[s]);
    Definition def;
    if (const auto* u = std::get_if<UnionRel>(&source.rels[s])) {
      def.arity = 2;
      for (int b = 0; b < scheme->size(); ++b)
        if (u->mask & bit(b))
          def.clauses.push_back({SimpAtom{scheme->basics[b], 0, 1}});
      // The empty relation keeps an empty clause list and expands to no
      // branches.
    } else {
      const auto& d = std::get<DnfRel>(source.rels[s]);
      def.arity = d.arity;
      for (const auto& clause : d.clauses) {
        std::vector<SimpAtom> atoms;
        for (const auto& a : clause)
          atoms.push_back(SimpAtom{scheme->basics[a.basic], a.i, a.j});
        def.clauses.push_back(std::move(atoms));
      }
    }
    defs[id] = std::move(def);
  }
  return synthesize(source, target, radius, std::move(defs));
}

DnfRel build_delta() {
  SchemePtr eq = load_scheme("eq");
  int beq = eq->basic_index("=");
  int bneq = eq->basic_index("!=");
  DnfRel rel;
  rel.arity = 3;
  rel.clauses.push_back({Atom{0, 1, beq}, Atom{0, 2, bneq}});
  rel.clauses.push_back({Atom{0, 1, bneq}, Atom{1, 2, beq}});
  return normalize_dnf(std::move(rel));
}

namespace {

BranchingMap make_omega(int radius) {
  SchemePtr rcc5 = load_scheme("rcc5");
  Language source = all_unions(rcc5);
  Language target = rcc5_gamma_prime(rcc5);
  Mask pp = bit(rcc5->basic_index("PP"));
  std::map<std::string, Definition> defs;
  for (int s = 0; s < source.size(); ++s) {
    Mask m = std::get<UnionRel>(source.rels[s]).mask;
    if (target.index_of_mask(m) >= 0) continue;
    Definition def;
    def.arity = 2;
    def.clauses.push_back({SimpAtom{"PP", 0, 1}});
    def.clauses.push_back({SimpAtom{rcc5->mask_name(m & ~pp), 0, 1}});
    defs["u:" + rcc5->mask_name(m)] = std::move(def);
  }
  BranchingMap map = synthesize(source, target, radius, std::move(defs));
  map.provenance = "built-in";
  return map;
}

}  // namespace

BranchingMap make_omega2() { return make_omega(2); }
BranchingMap make_omega3() { return make_omega(3); }

BranchingMap make_delta_map() {
  SchemePtr eq = load_scheme("eq");
  Language source(eq);
  source.add("delta", build_delta());
  Language target = basics_language(eq);
  std::map<std::string, Definition> defs;
  Definition def;
  def.arity = 3;
  def.clauses.push_back({SimpAtom{"=", 0, 1}, SimpAtom{"!=", 0, 2}});
  def.clauses.push_back({SimpAtom{"!=", 0, 1}, SimpAtom{"=", 1, 2}});
  defs["delta"] = std::move(def);
  BranchingMap map = synthesize(source, target, 3, std::move(defs));
  map.provenance = "built-in";
  return map;
}

}  // namespace scsp
