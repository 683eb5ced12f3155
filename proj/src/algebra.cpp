#include "scsp/algebra.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace scsp {

int PartitionScheme::basic_index(const std::string& b) const {
  for (int i = 0; i < size(); ++i)
    if (basics[i] == b) return i;
  throw UnknownRelation(b + " (not a basic of scheme " + name + ")");
}

int PartitionScheme::basic_index_or(const std::string& b, int fallback) const {
  for (int i = 0; i < size(); ++i)
    if (basics[i] == b) return i;
  return fallback;
}

std::string PartitionScheme::mask_name(Mask m) const {
  if (m == 0) return "empty";
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (!(m & bit(i))) continue;
    if (!out.empty()) out += "+";
    out += basics[i];
  }
  return out;
}

void PartitionScheme::validate() const {
  const int m = size();
  if (m < 1) throw MalformedTable("scheme has no basic relations");
  {
    std::set<std::string> seen(basics.begin(), basics.end());
    if (static_cast<int>(seen.size()) != m)
      throw MalformedTable("duplicate basic relation names");
  }
  if (static_cast<int>(converse.size()) != m ||
      static_cast<int>(composition.size()) != m)
    throw MalformedTable("table size does not match basic count");
  if (identity_mask == 0) throw MalformedTable("empty identity mask");
  for (int i = 0; i < m; ++i) {
    if (converse[i] < 0 || converse[i] >= m)
      throw MalformedTable("converse out of range for " + basics[i]);
    if (converse[converse[i]] != i)
      throw MalformedTable("converse is not an involution at " + basics[i]);
    if (static_cast<int>(composition[i].size()) != m)
      throw MalformedTable("composition row size mismatch at " + basics[i]);
  }
  if (identity >= 0 && converse[identity] != identity)
    throw MalformedTable("identity basic is not self-converse");
  for (int e = 0; e < m; ++e) {
    if (!(identity_mask & bit(e))) continue;
    if (converse[e] != e)
      throw MalformedTable("diagonal basic " + basics[e] +
                           " is not self-converse");
    // Identity law, per diagonal block: e o b never leaves {b}, and the
    // diagonal basics jointly reproduce b.
    for (int b = 0; b < m; ++b) {
      if ((composition[e][b] & ~bit(b)) || (composition[b][e] & ~bit(b)))
        throw MalformedTable("identity law violated at (" + basics[e] + "," +
                             basics[b] + ")");
    }
  }
  for (int b = 0; b < m; ++b) {
    Mask left = 0, right = 0;
    for (int e = 0; e < m; ++e) {
      if (!(identity_mask & bit(e))) continue;
      left |= composition[e][b];
      right |= composition[b][e];
    }
    if (left != bit(b) || right != bit(b))
      throw MalformedTable("identity law violated for " + basics[b]);
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Mask s = composition[a][b];
      Mask expect = converse_mask(s);
      if (composition[converse[b]][converse[a]] != expect)
        throw MalformedTable("converse/composition law violated at (" +
                             basics[a] + "," + basics[b] + ")");
    }
}

namespace {

using nlohmann::json;

SchemePtr scheme_from_json(const json& j) {
  auto s = std::make_shared<PartitionScheme>();
  try {
    s->name = j.value("name", "custom");
    for (const auto& b : j.at("basics")) s->basics.push_back(b);
    const int m = s->size();
    const std::string id = j.at("identity");
    s->identity = -1;
    for (int i = 0; i < m; ++i)
      if (s->basics[i] == id) s->identity = i;
    if (s->identity < 0) throw MalformedTable("identity not among basics");
    s->identity_mask = bit(s->identity);
    s->converse.assign(m, -1);
    for (const auto& [from, to] : j.at("converse").items()) {
      int fi = -1, ti = -1;
      for (int i = 0; i < m; ++i) {
        if (s->basics[i] == from) fi = i;
        if (s->basics[i] == std::string(to)) ti = i;
      }
      if (fi < 0 || ti < 0)
        throw MalformedTable("converse entry names unknown basic " + from);
      s->converse[fi] = ti;
    }
    for (int i = 0; i < m; ++i)
      if (s->converse[i] < 0)
        throw MalformedTable("missing converse entry for " + s->basics[i]);
    s->composition.assign(m, std::vector<Mask>(m, 0));
    std::vector<std::vector<bool>> listed(m, std::vector<bool>(m, false));
    for (const auto& [a, row] : j.at("composition").items()) {
      int ai = -1;
      for (int i = 0; i < m; ++i)
        if (s->basics[i] == a) ai = i;
      if (ai < 0) throw MalformedTable("composition row for unknown " + a);
      for (const auto& [b, entry] : row.items()) {
        int bi = -1;
        for (int i = 0; i < m; ++i)
          if (s->basics[i] == b) bi = i;
        if (bi < 0)
          throw MalformedTable("composition column for unknown " + b);
        Mask mask = 0;
        for (const auto& c : entry) {
          int ci = -1;
          for (int i = 0; i < m; ++i)
            if (s->basics[i] == std::string(c)) ci = i;
          if (ci < 0)
            throw MalformedTable("composition entry names unknown basic");
          mask |= bit(ci);
        }
        s->composition[ai][bi] = mask;
        listed[ai][bi] = true;
      }
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if (!listed[a][b])
          throw MalformedTable("missing composition entry (" + s->basics[a] +
                               "," + s->basics[b] + ")");
    s->aclosure_decides_basics = j.at("aclosure_decides_basics");
    const std::string tag = j.value("domain_tag", "custom");
    if (tag == "equality")
      s->domain_tag = DomainTag::Equality;
    else if (tag == "dense-order")
      s->domain_tag = DomainTag::DenseOrder;
    else if (tag == "rcc5")
      s->domain_tag = DomainTag::Rcc5;
    else
      s->domain_tag = DomainTag::Custom;
  } catch (const json::exception& e) {
    throw MalformedTable(std::string("bad scheme json: ") + e.what());
  }
  s->validate();
  return s;
}

// Composition tables for the built-in schemes, from the standard
// qualitative-reasoning literature.
const char* kRcc5Json = R"JSON({
  "name": "rcc5",
  "basics": ["DR", "PO", "PP", "PPi", "EQ"],
  "identity": "EQ",
  "converse": {"DR": "DR", "PO": "PO", "PP": "PPi", "PPi": "PP", "EQ": "EQ"},
  "composition": {
    "DR":  {"DR": ["DR", "PO", "PP", "PPi", "EQ"], "PO": ["DR", "PO", "PP"],
            "PP": ["DR", "PO", "PP"], "PPi": ["DR"], "EQ": ["DR"]},
    "PO":  {"DR": ["DR", "PO", "PPi"], "PO": ["DR", "PO", "PP", "PPi", "EQ"],
            "PP": ["PO", "PP"], "PPi": ["DR", "PO", "PPi"], "EQ": ["PO"]},
    "PP":  {"DR": ["DR"], "PO": ["DR", "PO", "PP"], "PP": ["PP"],
            "PPi": ["DR", "PO", "PP", "PPi", "EQ"], "EQ": ["PP"]},
    "PPi": {"DR": ["DR", "PO", "PPi"], "PO": ["PO", "PPi"],
            "PP": ["PO", "PP", "PPi", "EQ"], "PPi": ["PPi"], "EQ": ["PPi"]},
    "EQ":  {"DR": ["DR"], "PO": ["PO"], "PP": ["PP"], "PPi": ["PPi"],
            "EQ": ["EQ"]}
  },
  "aclosure_decides_basics": true,
  "domain_tag": "rcc5"
})JSON";

const char* kPointJson = R"JSON({
  "name": "point",
  "basics": ["=", "<", ">"],
  "identity": "=",
  "converse": {"=": "=", "<": ">", ">": "<"},
  "composition": {
    "=": {"=": ["="], "<": ["<"], ">": [">"]},
    "<": {"=": ["<"], "<": ["<"], ">": ["=", "<", ">"]},
    ">": {"=": [">"], "<": ["=", "<", ">"], ">": [">"]}
  },
  "aclosure_decides_basics": true,
  "domain_tag": "dense-order"
})JSON";

const char* kEqJson = R"JSON({
  "name": "eq",
  "basics": ["=", "!="],
  "identity": "=",
  "converse": {"=": "=", "!=": "!="},
  "composition": {
    "=": {"=": ["="], "!=": ["!="]},
    "!=": {"=": ["!="], "!=": ["=", "!="]}
  },
  "aclosure_decides_basics": true,
  "domain_tag": "equality"
})JSON";

SchemePtr make_finite_scheme(int d) {
  if (d < 1) throw UnknownScheme("finite:" + std::to_string(d));
  if (d * d > 31) throw UnknownScheme("finite domain too large");
  auto s = std::make_shared<PartitionScheme>();
  s->name = "finite:" + std::to_string(d);
  s->domain_tag = DomainTag::Finite;
  s->finite_domain_size = d;
  auto idx = [d](int i, int j) { return (i - 1) * d + (j - 1); };
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      s->basics.push_back("R_" + std::to_string(i) + std::to_string(j));
  const int m = d * d;
  s->identity = -1;  // identity is the union of the R_ii blocks
  s->identity_mask = 0;
  for (int i = 1; i <= d; ++i) s->identity_mask |= bit(idx(i, i));
  s->converse.assign(m, 0);
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) s->converse[idx(i, j)] = idx(j, i);
  s->composition.assign(m, std::vector<Mask>(m, 0));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k)
        for (int l = 1; l <= d; ++l)
          s->composition[idx(i, j)][idx(k, l)] =
              (j == k) ? bit(idx(i, l)) : 0;
  s->aclosure_decides_basics = true;
  s->validate();
  return s;
}

}  // namespace

SchemePtr parse_scheme_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw MalformedTable(std::string("invalid json: ") + e.what());
  }
  return scheme_from_json(j);
}

SchemePtr load_scheme(const std::string& source) {
  if (source == "rcc5") return parse_scheme_json(kRcc5Json);
  if (source == "point") return parse_scheme_json(kPointJson);
  if (source == "eq") return parse_scheme_json(kEqJson);
  if (source.rfind("finite:", 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(source.substr(7));
    } catch (...) {
      throw UnknownScheme(source);
    }
    return make_finite_scheme(d);
  }
  std::ifstream in(source);
  if (!in) throw UnknownScheme(source);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scheme_json(buf.str());
}

int relation_arity(const Relation& r) {
  if (std::holds_alternative<UnionRel>(r)) return 2;
  return std::get<DnfRel>(r).arity;
}

DnfRel normalize_dnf(DnfRel rel) {
  for (auto& clause : rel.clauses) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  }
  std::sort(rel.clauses.begin(), rel.clauses.end());
  rel.clauses.erase(std::unique(rel.clauses.begin(), rel.clauses.end()),
                    rel.clauses.end());
  // Drop clauses subsumed by a subset clause (fewer atoms = weaker).
  std::vector<std::vector<Atom>> kept;
  for (const auto& c : rel.clauses) {
    bool subsumed = false;
    for (const auto& other : rel.clauses) {
      if (&other == &c || other.size() >= c.size()) continue;
      if (std::includes(c.begin(), c.end(), other.begin(), other.end())) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) kept.push_back(c);
  }
  rel.clauses = std::move(kept);
  return rel;
}

FormulaPtr Formula::mk_atom(int i, int j, int basic) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Atom;
  f->atom = Atom{i, j, basic};
  return f;
}

FormulaPtr Formula::mk_not(FormulaPtr child) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->children = {std::move(child)};
  return f;
}

FormulaPtr Formula::mk_and(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::And;
  f->children = std::move(fs);
  return f;
}

FormulaPtr Formula::mk_or(std::vector<FormulaPtr> fs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Or;
  f->children = std::move(fs);
  return f;
}

namespace {

// Negation normal form with negated atoms expanded into the disjunction of
// the remaining basics, then DNF by distribution.
std::vector<std::vector<Atom>> to_dnf(const FormulaPtr& f,
                                      const PartitionScheme& scheme,
                                      bool negated) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      if (!negated) return {{f->atom}};
      std::vector<std::vector<Atom>> clauses;
      for (int b = 0; b < scheme.size(); ++b)
        if (b != f->atom.basic) clauses.push_back({Atom{f->atom.i, f->atom.j, b}});
      return clauses;
    }
    case Formula::Kind::Not:
      return to_dnf(f->children[0], scheme, !negated);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool conj = (f->kind == Formula::Kind::And) != negated;
      if (!conj) {
        std::vector<std::vector<Atom>> clauses;
        for (const auto& c : f->children) {
          auto sub = to_dnf(c, scheme, negated);
          clauses.insert(clauses.end(), sub.begin(), sub.end());
        }
        return clauses;
      }
      std::vector<std::vector<Atom>> acc = {{}};
      for (const auto& c : f->children) {
        auto sub = to_dnf(c, scheme, negated);
        std::vector<std::vector<Atom>> next;
        next.reserve(acc.size() * sub.size());
        for (const auto& a : acc)
          for (const auto& s : sub) {
            auto merged = a;
            merged.insert(merged.end(), s.begin(), s.end());
            next.push_back(std::move(merged));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

DnfRel eliminate_negation(const FormulaPtr& formula, int arity,
                          const PartitionScheme& scheme, int arity_cap) {
  if (arity > arity_cap)
    throw ArityCapExceeded("arity " + std::to_string(arity) + " > cap " +
                           std::to_string(arity_cap));
  DnfRel rel;
  rel.arity = arity;
  rel.clauses = to_dnf(formula, scheme, false);
  for (const auto& clause : rel.clauses)
    for (const auto& atom : clause)
      if (atom.i < 0 || atom.i >= arity || atom.j < 0 || atom.j >= arity)
        throw ArityMismatch("atom position out of range");
  return normalize_dnf(std::move(rel));
}

}  // namespace scsp
