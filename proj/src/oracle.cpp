#include "scsp/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace scsp {

Network Network::full(const PartitionScheme& scheme, int n) {
  Network net;
  net.n = n;
  net.cells.assign(static_cast<std::size_t>(n) * n, scheme.full_mask());
  for (int i = 0; i < n; ++i) net.at(i, i) = scheme.identity_mask;
  return net;
}

bool aclosure(const PartitionScheme& scheme, Network& net) {
  const int n = net.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      net.at(i, j) &= scheme.converse_mask(net.at(j, i));
      if (i == j) net.at(i, j) &= scheme.identity_mask;
    }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
          Mask refined =
              net.at(i, j) & scheme.compose_mask(net.at(i, k), net.at(k, j));
          if (refined != net.at(i, j)) {
            net.at(i, j) = refined;
            net.at(j, i) = scheme.converse_mask(refined);
            changed = true;
          }
        }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (net.at(i, j) == 0) return false;
  return true;
}

Network network_from_instance(const Instance& inst) {
  const auto& scheme = *inst.scheme;
  Network net = Network::full(scheme, static_cast<int>(inst.vars.size()));
  for (const auto& c : inst.constraints) {
    if (const auto* u = std::get_if<UnionRel>(&inst.rels[c.rel])) {
      int x = c.scope[0], y = c.scope[1];
      net.at(x, y) &= u->mask;
      net.at(y, x) &= scheme.converse_mask(u->mask);
    }
  }
  return net;
}

namespace {

struct DnfConstraint {
  const DnfRel* rel;
  std::vector<int> scope;
};

// A clause is viable under a partial network if every atom's basic is still
// in the pair's mask; exact on singleton networks.
bool dnf_viable(const Network& net, const DnfConstraint& c) {
  for (const auto& clause : c.rel->clauses) {
    bool ok = true;
    for (const auto& atom : clause) {
      int x = c.scope[atom.i], y = c.scope[atom.j];
      if (!(net.at(x, y) & bit(atom.basic))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

struct Searcher {
  const Instance& inst;
  const PartitionScheme& scheme;
  const OracleOptions& opts;
  std::vector<DnfConstraint> dnfs;
  std::vector<std::pair<int, int>> pairs;  // lexicographic, i <= j
  bool collect_all = false;
  std::vector<Certificate> found;
  bool stop = false;

  Searcher(const Instance& i, const OracleOptions& o)
      : inst(i), scheme(*i.scheme), opts(o) {
    if (!scheme.aclosure_decides_basics && !opts.concrete_checker)
      throw OracleUnavailable(
          "scheme " + scheme.name +
          " has no complete basic decision procedure configured");
    for (const auto& c : inst.constraints)
      if (const auto* d = std::get_if<DnfRel>(&inst.rels[c.rel]))
        dnfs.push_back(DnfConstraint{d, c.scope});
    const int n = static_cast<int>(inst.vars.size());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  }

  Certificate to_certificate(const Network& net) const {
    Certificate cert;
    cert.n = net.n;
    cert.cells.resize(static_cast<std::size_t>(net.n) * net.n);
    for (int i = 0; i < net.n; ++i)
      for (int j = 0; j < net.n; ++j)
        cert.at(i, j) = __builtin_ctz(net.at(i, j));
    return cert;
  }

  void leaf(const Network& net) {
    Certificate cert = to_certificate(net);
    if (!scheme.aclosure_decides_basics &&
        !opts.concrete_checker(cert, inst))
      return;
    for (const auto& c : dnfs)
      if (!dnf_viable(net, c)) return;  // exact here: all masks singleton
    found.push_back(std::move(cert));
    if (!collect_all) stop = true;
  }

  void dfs(Network net, std::size_t pair_idx) {
    if (stop) return;
    while (pair_idx < pairs.size() &&
           popcount(net.at(pairs[pair_idx].first, pairs[pair_idx].second)) ==
               1)
      ++pair_idx;
    if (pair_idx == pairs.size()) {
      leaf(net);
      return;
    }
    auto [x, y] = pairs[pair_idx];
    Mask options = net.at(x, y);
    for (int b = 0; b < scheme.size() && !stop; ++b) {
      if (!(options & bit(b))) continue;
      Network child = net;
      child.at(x, y) = bit(b);
      child.at(y, x) = bit(scheme.converse[b]);
      if (!aclosure(scheme, child)) continue;
      bool viable = true;
      for (const auto& c : dnfs)
        if (!dnf_viable(child, c)) {
          viable = false;
          break;
        }
      if (viable) dfs(std::move(child), pair_idx + 1);
    }
  }

  void run() {
    for (const auto& c : inst.constraints)
      if (const auto* u = std::get_if<UnionRel>(&inst.rels[c.rel]))
        if (u->mask == 0) return;  // empty relation: no certificate
    Network net = network_from_instance(inst);
    if (!aclosure(scheme, net)) return;
    dfs(std::move(net), 0);
  }
};

int default_cap(const PartitionScheme& scheme, const OracleOptions& opts) {
  if (opts.exhaustive_cap >= 0) return opts.exhaustive_cap;
  return scheme.size() <= 3 ? 7 : 5;
}

}  // namespace

std::optional<Certificate> find_certificate(const Instance& inst,
                                            const OracleOptions& opts) {
  Searcher s(inst, opts);
  s.run();
  if (s.found.empty()) return std::nullopt;
  return s.found.front();
}

std::vector<Certificate> enumerate_certificates(const Instance& inst,
                                                const OracleOptions& opts) {
  const int cap = default_cap(*inst.scheme, opts);
  if (static_cast<int>(inst.vars.size()) > cap)
    throw CapExceeded(std::to_string(inst.vars.size()) + " variables > cap " +
                      std::to_string(cap));
  Searcher s(inst, opts);
  s.collect_all = true;
  s.run();
  return s.found;
}

namespace {

// Reorders an instance's variables into sorted-name order so certificate
// sets from different instances are comparable.
Instance sort_vars(const Instance& inst) {
  std::vector<std::string> sorted = inst.vars;
  std::sort(sorted.begin(), sorted.end());
  Instance out;
  out.scheme = inst.scheme;
  out.rel_names = inst.rel_names;
  out.rels = inst.rels;
  for (const auto& v : sorted) out.add_var(v);
  for (const auto& c : inst.constraints) {
    std::vector<int> scope;
    for (int v : c.scope) scope.push_back(out.var_index(inst.vars[v]));
    out.constraints.push_back(Constraint{c.rel, std::move(scope)});
  }
  return out;
}

}  // namespace

bool equivalent(const Instance& a, const Instance& b,
                const OracleOptions& opts) {
  if (a.scheme->name != b.scheme->name)
    throw SchemeMismatch(a.scheme->name + " vs " + b.scheme->name);
  std::vector<std::string> va = a.vars, vb = b.vars;
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (va != vb) throw VariableSetMismatch("instances differ in variables");
  auto ca = enumerate_certificates(sort_vars(a), opts);
  auto cb = enumerate_certificates(sort_vars(b), opts);
  return ca == cb;  // both in canonical search order
}

bool certificate_satisfies(const Certificate& cert, const Instance& inst) {
  const auto& scheme = *inst.scheme;
  const int n = cert.n;
  if (n != static_cast<int>(inst.vars.size())) return false;
  for (int i = 0; i < n; ++i) {
    if (!(scheme.identity_mask & bit(cert.at(i, i)))) return false;
    for (int j = 0; j < n; ++j)
      if (cert.at(j, i) != scheme.converse[cert.at(i, j)]) return false;
  }
  // Consistency as a basic network.
  Network net;
  net.n = n;
  net.cells.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) net.at(i, j) = bit(cert.at(i, j));
  if (!aclosure(scheme, net)) return false;
  for (const auto& c : inst.constraints) {
    if (const auto* u = std::get_if<UnionRel>(&inst.rels[c.rel])) {
      if (!(u->mask & bit(cert.at(c.scope[0], c.scope[1])))) return false;
    } else {
      const auto& d = std::get<DnfRel>(inst.rels[c.rel]);
      bool sat = false;
      for (const auto& clause : d.clauses) {
        bool ok = true;
        for (const auto& atom : clause)
          if (cert.at(c.scope[atom.i], c.scope[atom.j]) != atom.basic) {
            ok = false;
            break;
          }
        if (ok) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
  }
  return true;
}

namespace {

// Evaluates every constraint under a concrete per-pair basic assignment
// given by `basic_of(x, y)`.
template <typename BasicOf>
bool eval_concrete(const Instance& inst, BasicOf basic_of) {
  for (const auto& c : inst.constraints) {
    if (const auto* u = std::get_if<UnionRel>(&inst.rels[c.rel])) {
      if (!(u->mask & bit(basic_of(c.scope[0], c.scope[1])))) return false;
    } else {
      const auto& d = std::get<DnfRel>(inst.rels[c.rel]);
      bool sat = false;
      for (const auto& clause : d.clauses) {
        bool ok = true;
        for (const auto& atom : clause)
          if (basic_of(c.scope[atom.i], c.scope[atom.j]) != atom.basic) {
            ok = false;
            break;
          }
        if (ok) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
  }
  return true;
}

}  // namespace

bool brute_force_equality(const Instance& inst) {
  if (inst.scheme->name != "eq")
    throw WrongScheme("brute_force_equality needs the eq scheme");
  const int n = static_cast<int>(inst.vars.size());
  if (n > 8) throw CapExceeded("brute_force_equality caps |V| at 8");
  const int eq = inst.scheme->basic_index("=");
  const int neq = inst.scheme->basic_index("!=");
  if (n == 0) return true;
  // Restricted growth strings enumerate all set partitions of V.
  std::vector<int> block(n, 0);
  std::function<bool(int, int)> rec = [&](int i, int maxb) -> bool {
    if (i == n) {
      auto basic_of = [&](int x, int y) {
        return block[x] == block[y] ? eq : neq;
      };
      return eval_concrete(inst, basic_of);
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      block[i] = b;
      if (rec(i + 1, std::max(maxb, b))) return true;
    }
    return false;
  };
  return rec(0, -1);
}

bool brute_force_order(const Instance& inst) {
  if (inst.scheme->name != "point")
    throw WrongScheme("brute_force_order needs the point scheme");
  const int n = static_cast<int>(inst.vars.size());
  if (n > 7) throw CapExceeded("brute_force_order caps |V| at 7");
  const int eq = inst.scheme->basic_index("=");
  const int lt = inst.scheme->basic_index("<");
  const int gt = inst.scheme->basic_index(">");
  if (n == 0) return true;
  // Every weak order on n points is realized by some rank map V -> [0, n).
  std::vector<int> rank(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) {
      auto basic_of = [&](int x, int y) {
        if (rank[x] == rank[y]) return eq;
        return rank[x] < rank[y] ? lt : gt;
      };
      return eval_concrete(inst, basic_of);
    }
    for (int r = 0; r < n; ++r) {
      rank[i] = r;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

std::string certificate_to_json(const Certificate& cert,
                                const Instance& inst) {
  nlohmann::ordered_json pairs = nlohmann::ordered_json::object();
  for (int i = 0; i < cert.n; ++i)
    for (int j = 0; j < cert.n; ++j) {
      if (i == j) continue;  // diagonal omitted
      pairs[inst.vars[i] + "," + inst.vars[j]] =
          inst.scheme->basics[cert.at(i, j)];
    }
  nlohmann::ordered_json j;
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

}  // namespace scsp
