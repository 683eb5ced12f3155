#include "scsp/simpmap.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "scsp/parallel.hpp"

namespace scsp {

int ReducedKey::pair_index(int i, int j) const {
  int idx = 0;
  for (int a = 0; a < nslots; ++a)
    for (int b = a + 1; b < nslots; ++b) {
      if (a == i && b == j) return idx;
      ++idx;
    }
  throw Error("pair (" + std::to_string(i) + "," + std::to_string(j) +
              ") out of range");
}

std::string ReducedKey::to_string(const PartitionScheme& scheme) const {
  std::string out = rel_id + "|";
  for (std::size_t p = 0; p < pattern.size(); ++p) {
    if (p) out += ",";
    out += std::to_string(pattern[p]);
  }
  out += "|";
  bool first = true;
  int idx = 0;
  for (int i = 0; i < nslots; ++i)
    for (int j = i + 1; j < nslots; ++j, ++idx) {
      if (alpha[idx] < 0) continue;
      if (!first) out += ";";
      first = false;
      out += std::to_string(i) + "," + std::to_string(j) + "=" +
             scheme.basics[alpha[idx]];
    }
  return out;
}

std::string relation_id(const PartitionScheme& scheme, const std::string& name,
                        const Relation& rel) {
  if (const auto* u = std::get_if<UnionRel>(&rel))
    return "u:" + scheme.mask_name(u->mask);
  return name;
}

ReducedKey make_key(const Instance& inst, const Constraint& c,
                    const PairAssignment& alpha) {
  ReducedKey key;
  key.rel_id = relation_id(*inst.scheme, inst.rel_names[c.rel], inst.rels[c.rel]);
  std::vector<int> slot_var;  // slot -> instance variable index
  for (int v : c.scope) {
    int slot = -1;
    for (std::size_t s = 0; s < slot_var.size(); ++s)
      if (slot_var[s] == v) slot = static_cast<int>(s);
    if (slot < 0) {
      slot = static_cast<int>(slot_var.size());
      slot_var.push_back(v);
    }
    key.pattern.push_back(slot);
  }
  key.nslots = static_cast<int>(slot_var.size());
  key.alpha.assign(key.nslots * (key.nslots - 1) / 2, -1);
  int idx = 0;
  for (int i = 0; i < key.nslots; ++i)
    for (int j = i + 1; j < key.nslots; ++j, ++idx) {
      auto val = alpha.get(slot_var[i], slot_var[j]);
      if (val) key.alpha[idx] = *val;
    }
  return key;
}

ReducedKey parse_key(const PartitionScheme& scheme, const std::string& text) {
  auto bar1 = text.find('|');
  auto bar2 = text.find('|', bar1 == std::string::npos ? 0 : bar1 + 1);
  if (bar1 == std::string::npos || bar2 == std::string::npos)
    throw ParseError("malformed reduced key: " + text);
  ReducedKey key;
  key.rel_id = text.substr(0, bar1);
  std::stringstream pat(text.substr(bar1 + 1, bar2 - bar1 - 1));
  std::string tok;
  while (std::getline(pat, tok, ','))
    key.pattern.push_back(std::stoi(tok));
  if (key.pattern.empty()) throw ParseError("empty pattern in key: " + text);
  key.nslots = *std::max_element(key.pattern.begin(), key.pattern.end()) + 1;
  key.alpha.assign(key.nslots * (key.nslots - 1) / 2, -1);
  std::stringstream al(text.substr(bar2 + 1));
  while (std::getline(al, tok, ';')) {
    auto comma = tok.find(',');
    auto eq = tok.find('=');
    if (comma == std::string::npos || eq == std::string::npos)
      throw ParseError("malformed alpha fragment in key: " + text);
    int i = std::stoi(tok.substr(0, comma));
    int j = std::stoi(tok.substr(comma + 1, eq - comma - 1));
    key.alpha[key.pair_index(i, j)] =
        scheme.basic_index(tok.substr(eq + 1));
  }
  return key;
}

namespace {

std::string slot_name(int s) { return "s" + std::to_string(s); }

bool is_rk_id(const std::string& id) {
  if (id.size() < 3 || id.compare(0, 2, "R_") != 0) return false;
  return std::all_of(id.begin() + 2, id.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Instance key_instance(const ReducedKey& key, const std::string& rel_name,
                      const Relation& rel, SchemePtr scheme) {
  Instance out;
  out.scheme = scheme;
  for (int s = 0; s < key.nslots; ++s) out.add_var(slot_name(s));
  int r = out.add_rel(rel_name, rel);
  std::vector<int> scope;
  for (int p : key.pattern) scope.push_back(p);
  out.add_constraint_idx(r, std::move(scope));
  int idx = 0;
  for (int i = 0; i < key.nslots; ++i)
    for (int j = i + 1; j < key.nslots; ++j, ++idx) {
      if (key.alpha[idx] < 0) continue;
      const std::string& bname = scheme->basics[key.alpha[idx]];
      int br = out.add_rel("basic:" + bname, UnionRel{bit(key.alpha[idx])});
      out.add_constraint_idx(br, {i, j});
    }
  return out;
}

namespace {

// Resolves a formula atom name against the target language, falling back to
// a plain basic relation.
Relation resolve_atom(const std::string& name, const Language& target,
                      const PartitionScheme& scheme) {
  int idx = target.index_or(name, -1);
  if (idx >= 0) return target.rels[idx];
  int b = scheme.basic_index_or(name, -1);
  if (b >= 0) return UnionRel{bit(b)};
  throw UnknownRelation(name);
}

Instance instantiate_entry(const SimpEntry& entry,
                           const std::vector<std::string>& slot_vars,
                           const Language& target, SchemePtr scheme) {
  Instance out;
  out.scheme = scheme;
  for (const auto& v : slot_vars) out.add_var(v);
  if (entry.kind == EntryKind::Unsat) {
    int r = out.add_rel("unsat", UnionRel{0});
    out.add_constraint_idx(r, {0, 0});
    return out;
  }
  for (const auto& atom : entry.atoms) {
    int r = out.add_rel(atom.rel, resolve_atom(atom.rel, target, *scheme));
    out.add_constraint_idx(r, {atom.i, atom.j});
  }
  return out;
}

std::vector<Certificate> sorted_certs(const Instance& inst,
                                      const OracleOptions& opts) {
  auto certs = enumerate_certificates(inst, opts);
  std::sort(certs.begin(), certs.end());
  return certs;
}

// Synthesizes the entry for one key: per slot pair, the tightest
// intersection of target relations covering the certificate projection;
// equivalence-checked, then greedily pruned to a minimal atom list.
std::optional<SimpEntry> synthesize(const ReducedKey& key,
                                    const std::string& rel_name,
                                    const Relation& rel, const Language& target,
                                    SchemePtr scheme,
                                    const OracleOptions& opts) {
  Instance reduced = key_instance(key, rel_name, rel, scheme);
  auto certs = sorted_certs(reduced, opts);
  if (certs.empty()) return SimpEntry{EntryKind::Unsat, {}};

  std::vector<int> order;  // target indices, tightest masks first
  for (int t = 0; t < target.size(); ++t) order.push_back(t);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int pa = popcount(std::get<UnionRel>(target.rels[a]).mask);
    int pb = popcount(std::get<UnionRel>(target.rels[b]).mask);
    if (pa != pb) return pa < pb;
    return target.names[a] < target.names[b];
  });

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < key.nslots; ++i)
    for (int j = i + 1; j < key.nslots; ++j) pairs.push_back({i, j});
  if (popcount(scheme->identity_mask) > 1)
    for (int i = 0; i < key.nslots; ++i) pairs.push_back({i, i});

  SimpEntry entry{EntryKind::Formula, {}};
  Mask full = scheme->full_mask();
  for (auto [i, j] : pairs) {
    Mask proj = 0;
    for (const auto& cert : certs) proj |= bit(cert.at(i, j));
    if (proj == full) continue;
    Mask cur = full;
    for (int t : order) {
      Mask m = std::get<UnionRel>(target.rels[t]).mask;
      if ((m & proj) != proj) continue;
      if ((cur & m) == cur) continue;
      cur &= m;
      entry.atoms.push_back(SimpAtom{target.names[t], i, j});
    }
  }

  std::vector<std::string> slot_vars;
  for (int s = 0; s < key.nslots; ++s) slot_vars.push_back(slot_name(s));
  auto matches = [&](const SimpEntry& cand) {
    Instance ci = instantiate_entry(cand, slot_vars, target, scheme);
    return sorted_certs(ci, opts) == certs;
  };
  if (!matches(entry)) return std::nullopt;
  for (int a = static_cast<int>(entry.atoms.size()) - 1; a >= 0; --a) {
    SimpEntry trial = entry;
    trial.atoms.erase(trial.atoms.begin() + a);
    if (matches(trial)) entry = std::move(trial);
  }
  return entry;
}

void append_patterns(int arity, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == arity) {
    out.push_back(cur);
    return;
  }
  int next = cur.empty() ? 0 : *std::max_element(cur.begin(), cur.end()) + 1;
  for (int s = 0; s <= next; ++s) {
    cur.push_back(s);
    append_patterns(arity, cur, out);
    cur.pop_back();
  }
}

int resolved_cap(const OracleOptions& opts, const PartitionScheme& scheme) {
  if (opts.exhaustive_cap >= 0) return opts.exhaustive_cap;
  return scheme.size() <= 3 ? 7 : 5;
}

}  // namespace

bool SimplificationMap::covers(const std::string& rel_id) const {
  if (builtin_rk) return is_rk_id(rel_id);
  return source.contains(rel_id);
}

std::optional<SimpEntry> SimplificationMap::entry_for(
    const ReducedKey& key) const {
  if (!covers(key.rel_id)) throw MissingRelationFamily(key.rel_id);
  if (builtin_rk) return builtin_rk_entry(key, *scheme);
  auto it = entries.find(key.to_string(*scheme));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

Instance SimplificationMap::entry_instance(const ReducedKey& key,
                                           const SimpEntry& entry) const {
  std::vector<std::string> slot_vars;
  for (int s = 0; s < key.nslots; ++s) slot_vars.push_back(slot_name(s));
  return instantiate_entry(entry, slot_vars, target, scheme);
}

std::optional<Instance> SimplificationMap::lookup(
    const Instance& inst, const Constraint& c,
    const PairAssignment& alpha) const {
  ReducedKey key = make_key(inst, c, alpha);
  auto entry = entry_for(key);
  if (!entry) return std::nullopt;
  std::vector<std::string> slot_vars(key.nslots);
  for (std::size_t p = 0; p < key.pattern.size(); ++p)
    slot_vars[key.pattern[p]] = inst.vars[c.scope[p]];
  return instantiate_entry(*entry, slot_vars, target, scheme);
}

SimplificationMap compute_simpmap(const Language& source,
                                  const Language& target, int arity_cap,
                                  int jobs, const OracleOptions& opts) {
  SchemePtr scheme = source.scheme;
  if (!scheme || !target.scheme || scheme->name != target.scheme->name)
    throw SchemeMismatch("simplification map languages disagree on scheme");
  for (int t = 0; t < target.size(); ++t)
    if (!std::holds_alternative<UnionRel>(target.rels[t]))
      throw NonBinaryTarget(target.names[t]);

  SimplificationMap map;
  map.scheme = scheme;
  map.target = target;
  map.arity_cap = arity_cap;
  map.provenance = "computed";
  map.source = Language(scheme);
  // Source augmented with the target relations, keyed canonically, so that
  // translated instances whose constraints already live in T stay covered.
  std::vector<std::pair<std::string, Relation>> families;
  auto add_family = [&](const std::string& name, const Relation& rel) {
    std::string id = relation_id(*scheme, name, rel);
    if (map.source.contains(id)) return;
    map.source.add(id, rel);
    families.push_back({id, rel});
  };
  for (int s = 0; s < source.size(); ++s)
    add_family(source.names[s], source.rels[s]);
  for (int t = 0; t < target.size(); ++t)
    add_family(target.names[t], target.rels[t]);

  OracleOptions key_opts = opts;
  key_opts.exhaustive_cap = std::max(resolved_cap(opts, *scheme), arity_cap);

  std::vector<ReducedKey> keys;
  for (const auto& [id, rel] : families) {
    int arity = relation_arity(rel);
    if (arity > arity_cap)
      throw ArityCapExceeded(id + " has arity " + std::to_string(arity) +
                             " > cap " + std::to_string(arity_cap));
    std::vector<std::vector<int>> patterns;
    std::vector<int> cur;
    append_patterns(arity, cur, patterns);
    for (const auto& pattern : patterns) {
      ReducedKey base;
      base.rel_id = id;
      base.pattern = pattern;
      base.nslots = *std::max_element(pattern.begin(), pattern.end()) + 1;
      int npairs = base.nslots * (base.nslots - 1) / 2;
      std::vector<int> digits(npairs, -1);
      while (true) {
        base.alpha = digits;
        keys.push_back(base);
        int p = 0;
        while (p < npairs && digits[p] == scheme->size() - 1) digits[p++] = -1;
        if (p == npairs) break;
        ++digits[p];
      }
    }
  }

  std::vector<std::optional<SimpEntry>> results(keys.size());
  parallel_for(static_cast<int>(keys.size()), jobs, [&](int k) {
    const ReducedKey& key = keys[k];
    int idx = map.source.index_or(key.rel_id, -1);
    results[k] = synthesize(key, key.rel_id, map.source.rels[idx], target,
                            scheme, key_opts);
  });
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (results[k]) map.entries[keys[k].to_string(*scheme)] = *results[k];
  return map;
}

std::optional<SimpEntry> builtin_rk_entry(const ReducedKey& key,
                                          const PartitionScheme& scheme) {
  if (!is_rk_id(key.rel_id)) throw MissingRelationFamily(key.rel_id);
  if (scheme.identity < 0)
    throw WrongScheme("R_k map needs a scheme with a single identity basic");
  int k = std::stoi(key.rel_id.substr(2));
  if (k != key.arity())
    throw ArityMismatch(key.rel_id + " applied to " +
                        std::to_string(key.arity()) + " positions");
  const std::string& eq_name = scheme.basics[scheme.identity];
  Mask neq_mask = scheme.full_mask() & ~bit(scheme.identity);
  std::string neq_name = "neq";
  for (int b = 0; b < scheme.size(); ++b)
    if (bit(b) == neq_mask) neq_name = scheme.basics[b];

  bool duplicated = key.nslots < key.arity();
  bool has_identity = false, has_other = false;
  for (int a : key.alpha) {
    if (a == scheme.identity) has_identity = true;
    else if (a >= 0) has_other = true;
  }
  if (!duplicated && !has_identity && !has_other) return std::nullopt;

  std::set<std::tuple<std::string, int, int>> atoms;
  if (duplicated || has_identity) {
    for (int s = 1; s < key.nslots; ++s) atoms.insert({eq_name, 0, s});
  } else {
    for (int i = 0; i < key.nslots; ++i)
      for (int j = i + 1; j < key.nslots; ++j) atoms.insert({neq_name, i, j});
  }
  int idx = 0;
  for (int i = 0; i < key.nslots; ++i)
    for (int j = i + 1; j < key.nslots; ++j, ++idx)
      if (key.alpha[idx] >= 0)
        atoms.insert({scheme.basics[key.alpha[idx]], i, j});

  SimpEntry entry{EntryKind::Formula, {}};
  for (const auto& [name, i, j] : atoms)
    entry.atoms.push_back(SimpAtom{name, i, j});
  return entry;
}

SimplificationMap make_builtin_rk_map(SchemePtr scheme) {
  if (scheme->identity < 0)
    throw WrongScheme("R_k map needs a scheme with a single identity basic");
  SimplificationMap map;
  map.scheme = scheme;
  map.provenance = "built-in";
  map.builtin_rk = true;
  map.source = Language(scheme);
  map.target = basics_language(scheme);
  Mask neq_mask = scheme->full_mask() & ~bit(scheme->identity);
  if (map.target.index_of_mask(neq_mask) < 0)
    map.target.add("neq", UnionRel{neq_mask});
  return map;
}

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

ordered_json language_json(const Language& lang) {
  ordered_json out = ordered_json::object();
  std::vector<std::string> names = lang.names;
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    int idx = lang.index_or(name, -1);
    out[name] =
        json::parse(relation_to_json(lang.rels[idx], *lang.scheme));
  }
  return out;
}

Language language_from_json(const json& j, SchemePtr scheme) {
  Language lang(scheme);
  for (const auto& [name, jrel] : j.items())
    lang.add(name, relation_from_json_text(jrel.dump(), *scheme, name));
  return lang;
}

}  // namespace

std::string SimplificationMap::serialize() const {
  ordered_json j;
  j["scheme"] = scheme->name;
  j["cap"] = arity_cap;
  j["provenance"] = provenance;
  j["builtin_rk"] = builtin_rk;
  j["source"] = language_json(source);
  j["target"] = language_json(target);
  ordered_json jentries = ordered_json::array();
  for (const auto& [key, entry] : entries) {
    ordered_json je;
    je["key"] = key;
    if (entry.kind == EntryKind::Unsat) {
      je["formula"] = "UNSAT";
    } else {
      ordered_json atoms = ordered_json::array();
      for (const auto& a : entry.atoms) atoms.push_back({a.rel, a.i, a.j});
      je["formula"] = atoms;
    }
    jentries.push_back(je);
  }
  j["entries"] = jentries;
  return j.dump(2) + "\n";
}

void verify_map(const SimplificationMap& map, int samples, unsigned seed,
                const OracleOptions& opts) {
  std::vector<std::string> keys;
  for (const auto& [key, entry] : map.entries) keys.push_back(key);
  if (static_cast<int>(keys.size()) > samples) {
    std::mt19937 rng(seed);
    std::shuffle(keys.begin(), keys.end(), rng);
    keys.resize(samples);
  }
  OracleOptions key_opts = opts;
  key_opts.exhaustive_cap =
      std::max(resolved_cap(opts, *map.scheme), map.arity_cap);
  for (const auto& text : keys) {
    ReducedKey key = parse_key(*map.scheme, text);
    int idx = map.source.index_or(key.rel_id, -1);
    if (idx < 0) throw MissingRelationFamily(key.rel_id);
    Instance reduced =
        key_instance(key, key.rel_id, map.source.rels[idx], map.scheme);
    Instance formula = map.entry_instance(key, map.entries.at(text));
    if (!equivalent(reduced, formula, key_opts))
      throw Error("map entry failed oracle verification: " + text);
  }
}

SimplificationMap load_map(const std::string& json_text, SchemePtr scheme) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  SimplificationMap map;
  try {
    map.scheme = scheme ? scheme : load_scheme(j.at("scheme"));
    map.arity_cap = j.at("cap");
    map.provenance = j.at("provenance");
    map.builtin_rk = j.value("builtin_rk", false);
    map.source = language_from_json(j.at("source"), map.scheme);
    map.target = language_from_json(j.at("target"), map.scheme);
    for (const auto& je : j.at("entries")) {
      SimpEntry entry;
      if (je.at("formula").is_string()) {
        if (je.at("formula") != "UNSAT")
          throw ParseError("unknown formula tag in map entry");
        entry.kind = EntryKind::Unsat;
      } else {
        for (const auto& ja : je.at("formula"))
          entry.atoms.push_back(SimpAtom{ja.at(0), ja.at(1), ja.at(2)});
      }
      map.entries[je.at("key")] = entry;
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  verify_map(map, 100, 0);
  return map;
}

SimplificationMap load_map_file(const std::string& path, SchemePtr scheme) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str(), scheme);
}

}  // namespace scsp
