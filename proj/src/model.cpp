#include "scsp/model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scsp {

int Instance::var_index(const std::string& v) const {
  for (int i = 0; i < static_cast<int>(vars.size()); ++i)
    if (vars[i] == v) return i;
  throw UnknownVariable(v);
}

int Instance::var_index_or(const std::string& v, int fallback) const {
  for (int i = 0; i < static_cast<int>(vars.size()); ++i)
    if (vars[i] == v) return i;
  return fallback;
}

int Instance::rel_index(const std::string& r) const {
  for (int i = 0; i < static_cast<int>(rel_names.size()); ++i)
    if (rel_names[i] == r) return i;
  throw UnknownRelation(r);
}

int Instance::rel_index_or(const std::string& r, int fallback) const {
  for (int i = 0; i < static_cast<int>(rel_names.size()); ++i)
    if (rel_names[i] == r) return i;
  return fallback;
}

int Instance::add_var(const std::string& v) {
  int idx = var_index_or(v, -1);
  if (idx >= 0) return idx;
  vars.push_back(v);
  return static_cast<int>(vars.size()) - 1;
}

int Instance::add_rel(const std::string& name, Relation rel) {
  int idx = rel_index_or(name, -1);
  if (idx >= 0) return idx;
  rel_names.push_back(name);
  rels.push_back(std::move(rel));
  return static_cast<int>(rel_names.size()) - 1;
}

void Instance::add_constraint(const std::string& rel,
                              const std::vector<std::string>& scope) {
  Constraint c;
  c.rel = rel_index(rel);
  for (const auto& v : scope) c.scope.push_back(var_index(v));
  if (static_cast<int>(c.scope.size()) != relation_arity(rels[c.rel]))
    throw ArityMismatch(rel + " expects " +
                        std::to_string(relation_arity(rels[c.rel])) +
                        " arguments, got " + std::to_string(c.scope.size()));
  constraints.push_back(std::move(c));
}

void Instance::add_constraint_idx(int rel, std::vector<int> scope) {
  if (static_cast<int>(scope.size()) != relation_arity(rels[rel]))
    throw ArityMismatch(rel_names[rel]);
  constraints.push_back(Constraint{rel, std::move(scope)});
}

std::string Instance::constraint_str(const Constraint& c) const {
  std::string out = rel_names[c.rel] + "(";
  for (std::size_t i = 0; i < c.scope.size(); ++i) {
    if (i) out += ",";
    out += vars[c.scope[i]];
  }
  return out + ")";
}

Instance restrict(const Instance& inst,
                  const std::vector<std::string>& keep) {
  std::set<int> keep_idx;
  for (const auto& v : keep) keep_idx.insert(inst.var_index(v));
  Instance out;
  out.scheme = inst.scheme;
  out.rel_names = inst.rel_names;
  out.rels = inst.rels;
  std::map<int, int> remap;
  for (const auto& v : keep)
    if (!remap.count(inst.var_index(v)))
      remap[inst.var_index(v)] = out.add_var(v);
  for (const auto& c : inst.constraints) {
    bool inside = std::all_of(c.scope.begin(), c.scope.end(),
                              [&](int v) { return keep_idx.count(v) > 0; });
    if (!inside) continue;
    std::vector<int> scope;
    for (int v : c.scope) scope.push_back(remap.at(v));
    out.constraints.push_back(Constraint{c.rel, std::move(scope)});
  }
  return out;
}

Instance splice(const Instance& inst, const Instance& local) {
  if (inst.scheme->name != local.scheme->name)
    throw SchemeMismatch(inst.scheme->name + " vs " + local.scheme->name);
  std::set<int> covered;
  for (const auto& v : local.vars) covered.insert(inst.var_index(v));
  Instance out;
  out.scheme = inst.scheme;
  out.vars = inst.vars;
  out.rel_names = inst.rel_names;
  out.rels = inst.rels;
  for (const auto& c : inst.constraints) {
    bool inside = std::all_of(c.scope.begin(), c.scope.end(),
                              [&](int v) { return covered.count(v) > 0; });
    if (!inside) out.constraints.push_back(c);
  }
  for (const auto& c : local.constraints) {
    int rel = out.add_rel(local.rel_names[c.rel], local.rels[c.rel]);
    std::vector<int> scope;
    for (int v : c.scope) scope.push_back(out.var_index(local.vars[v]));
    out.constraints.push_back(Constraint{rel, std::move(scope)});
  }
  return out;
}

void PairAssignment::set(int x, int y, int basic) {
  if (x == y && !(scheme_->identity_mask & bit(basic)))
    throw InconsistentAlphaDiagonal("(" + std::to_string(x) + "," +
                                    std::to_string(y) + ") -> " +
                                    scheme_->basics[basic]);
  int b = basic;
  if (y < x) {
    std::swap(x, y);
    b = scheme_->converse[b];
  }
  auto [it, inserted] = entries_.emplace(std::make_pair(x, y), b);
  if (!inserted && it->second != b)
    throw Error("conflicting alpha entries on one pair");
}

std::optional<int> PairAssignment::get(int x, int y) const {
  bool flip = y < x;
  if (flip) std::swap(x, y);
  auto it = entries_.find({x, y});
  if (it == entries_.end()) return std::nullopt;
  return flip ? scheme_->converse[it->second] : it->second;
}

Instance reduce_constraint(const Instance& inst, const Constraint& c,
                           const PairAssignment& alpha) {
  Instance out;
  out.scheme = inst.scheme;
  out.rel_names = inst.rel_names;
  out.rels = inst.rels;
  for (int v : c.scope) out.add_var(inst.vars[v]);
  std::vector<int> scope;
  for (int v : c.scope) scope.push_back(out.var_index(inst.vars[v]));
  out.constraints.push_back(Constraint{c.rel, scope});
  // One basic atom per alpha-defined scope pair, each pair once.
  std::set<std::pair<int, int>> done;
  for (int a : c.scope)
    for (int b : c.scope) {
      int x = std::min(a, b), y = std::max(a, b);
      if (done.count({x, y})) continue;
      auto val = alpha.get(x, y);
      if (!val) continue;
      done.insert({x, y});
      std::string bname = inst.scheme->basics[*val];
      int rel = out.add_rel("basic:" + bname, UnionRel{bit(*val)});
      out.constraints.push_back(
          Constraint{rel,
                     {out.var_index(inst.vars[x]), out.var_index(inst.vars[y])}});
    }
  return out;
}

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Relation relation_from_json(const json& j, const PartitionScheme& scheme,
                            const std::string& name) {
  int arity = j.at("arity");
  if (j.contains("union")) {
    if (arity != 2) throw ParseError("union relation " + name + " must be binary");
    Mask mask = 0;
    for (const auto& b : j.at("union")) mask |= bit(scheme.basic_index(b));
    return UnionRel{mask};
  }
  if (j.contains("dnf")) {
    DnfRel rel;
    rel.arity = arity;
    if (arity < 1) throw ParseError("relation " + name + " has arity < 1");
    for (const auto& jclause : j.at("dnf")) {
      std::vector<Atom> clause;
      for (const auto& jatom : jclause) {
        if (jatom.size() != 3) throw ParseError("atom must be [i,j,basic]");
        int i = jatom[0], k = jatom[1];
        if (i < 0 || i >= arity || k < 0 || k >= arity)
          throw ParseError("atom position out of range in " + name);
        clause.push_back(Atom{i, k, scheme.basic_index(jatom[2])});
      }
      rel.clauses.push_back(std::move(clause));
    }
    if (rel.clauses.empty())
      throw ParseError("relation " + name + " has no clauses");
    return normalize_dnf(std::move(rel));
  }
  throw ParseError("relation " + name + " needs \"union\" or \"dnf\"");
}

ordered_json relation_json(const Relation& rel, const PartitionScheme& scheme) {
  ordered_json jr;
  if (const auto* u = std::get_if<UnionRel>(&rel)) {
    jr["arity"] = 2;
    ordered_json basics = ordered_json::array();
    for (int b = 0; b < scheme.size(); ++b)
      if (u->mask & bit(b)) basics.push_back(scheme.basics[b]);
    jr["union"] = basics;
  } else {
    const auto& d = std::get<DnfRel>(rel);
    jr["arity"] = d.arity;
    ordered_json clauses = ordered_json::array();
    for (const auto& clause : d.clauses) {
      ordered_json jc = ordered_json::array();
      for (const auto& atom : clause)
        jc.push_back({atom.i, atom.j, scheme.basics[atom.basic]});
      clauses.push_back(jc);
    }
    jr["dnf"] = clauses;
  }
  return jr;
}

}  // namespace

std::string relation_to_json(const Relation& rel,
                             const PartitionScheme& scheme) {
  return relation_json(rel, scheme).dump();
}

Relation relation_from_json_text(const std::string& json_text,
                                 const PartitionScheme& scheme,
                                 const std::string& name) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return relation_from_json(j, scheme, name);
}

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  Instance inst;
  try {
    inst.scheme = load_scheme(j.at("scheme"));
    for (const auto& v : j.at("variables")) inst.add_var(v);
    if (static_cast<int>(inst.vars.size()) !=
        j.at("variables").size())
      throw ParseError("duplicate variable names");
    for (const auto& [name, jrel] : j.at("relations").items())
      inst.add_rel(name, relation_from_json(jrel, *inst.scheme, name));
    for (const auto& jc : j.at("constraints")) {
      std::string rel = jc.at("rel");
      std::vector<std::string> scope;
      for (const auto& v : jc.at("scope")) scope.push_back(v);
      inst.add_constraint(rel, scope);
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return inst;
}

Instance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  ordered_json j;
  j["scheme"] = inst.scheme->name;
  ordered_json jrels = ordered_json::object();
  std::vector<std::string> names = inst.rel_names;
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    jrels[name] = relation_json(inst.rels[inst.rel_index(name)], *inst.scheme);
  }
  j["relations"] = jrels;
  j["variables"] = inst.vars;
  ordered_json jcs = ordered_json::array();
  for (const auto& c : inst.constraints) {
    ordered_json jc;
    jc["rel"] = inst.rel_names[c.rel];
    ordered_json scope = ordered_json::array();
    for (int v : c.scope) scope.push_back(inst.vars[v]);
    jc["scope"] = scope;
    jcs.push_back(jc);
  }
  j["constraints"] = jcs;
  return j.dump(2) + "\n";
}

}  // namespace scsp
