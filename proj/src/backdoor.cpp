#include "scsp/backdoor.hpp"

#include <algorithm>
#include <set>

#include "scsp/parallel.hpp"

namespace scsp {

bool Backdoor::contains(int x, int y) const {
  auto p = std::minmax(x, y);
  return std::binary_search(pairs.begin(), pairs.end(),
                            std::make_pair(p.first, p.second));
}

void Backdoor::add(int x, int y) {
  if (x == y) throw Error("backdoor pair must join distinct variables");
  if (contains(x, y)) return;
  auto p = std::minmax(x, y);
  pairs.push_back({p.first, p.second});
  std::sort(pairs.begin(), pairs.end());
}

Backdoor make_backdoor(
    const Instance& inst,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Backdoor bd;
  for (const auto& [a, b] : pairs) bd.add(inst.var_index(a), inst.var_index(b));
  return bd;
}

namespace {

// DFS over the backdoor pairs: singleton assignment plus algebraic-closure
// pruning, exact certificate check at complete assignments. `restrict`
// optionally narrows the basics tried per pair.
std::vector<PairAssignment> consistent_alphas_impl(
    const Instance& inst, const Backdoor& bd, const OracleOptions& opts,
    const std::vector<Mask>* restrict_masks) {
  std::vector<PairAssignment> out;
  const PartitionScheme& scheme = *inst.scheme;
  int n = static_cast<int>(inst.vars.size());
  Network net = Network::full(scheme, n);

  // Variables touched by the backdoor, for the exact leaf check.
  std::set<int> touched_set;
  for (auto [x, y] : bd.pairs) {
    touched_set.insert(x);
    touched_set.insert(y);
  }
  std::vector<int> touched(touched_set.begin(), touched_set.end());

  std::vector<int> chosen(bd.pairs.size(), -1);
  auto leaf_consistent = [&]() {
    Instance local;
    local.scheme = inst.scheme;
    for (int v : touched) local.add_var(inst.vars[v]);
    for (std::size_t p = 0; p < bd.pairs.size(); ++p) {
      int b = chosen[p];
      int r = local.add_rel("basic:" + scheme.basics[b], UnionRel{bit(b)});
      local.add_constraint_idx(r, {local.var_index(inst.vars[bd.pairs[p].first]),
                                   local.var_index(inst.vars[bd.pairs[p].second])});
    }
    return find_certificate(local, opts).has_value();
  };

  std::function<void(std::size_t, const Network&)> rec =
      [&](std::size_t depth, const Network& cur) {
        if (depth == bd.pairs.size()) {
          if (!leaf_consistent()) return;
          PairAssignment alpha(inst.scheme);
          for (std::size_t p = 0; p < bd.pairs.size(); ++p)
            alpha.set(bd.pairs[p].first, bd.pairs[p].second, chosen[p]);
          out.push_back(std::move(alpha));
          return;
        }
        auto [x, y] = bd.pairs[depth];
        Mask cand = cur.at(x, y);
        if (restrict_masks) cand &= (*restrict_masks)[depth];
        for (int b = 0; b < scheme.size(); ++b) {
          if (!(cand & bit(b))) continue;
          Network next = cur;
          next.at(x, y) = bit(b);
          next.at(y, x) = bit(scheme.converse[b]);
          if (!aclosure(scheme, next)) continue;
          chosen[depth] = b;
          rec(depth + 1, next);
        }
      };
  rec(0, net);
  return out;
}

}  // namespace

std::vector<PairAssignment> consistent_alphas(const Instance& inst,
                                              const Backdoor& bd,
                                              const OracleOptions& opts) {
  return consistent_alphas_impl(inst, bd, opts, nullptr);
}

std::string alpha_str(const Instance& inst, const PairAssignment& alpha) {
  if (alpha.entries().empty()) return "{}";
  std::string out = "{";
  bool first = true;
  for (const auto& [pair, basic] : alpha.entries()) {
    if (!first) out += ",";
    first = false;
    out += "(" + inst.vars[pair.first] + "," + inst.vars[pair.second] +
           ")=" + inst.scheme->basics[basic];
  }
  return out + "}";
}

std::optional<Instance> translate_instance(const Instance& inst,
                                           const PairAssignment& alpha,
                                           const SimplificationMap& map,
                                           int* failing) {
  Instance out;
  out.scheme = inst.scheme;
  out.vars = inst.vars;
  for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
    auto local = map.lookup(inst, inst.constraints[ci], alpha);
    if (!local) {
      if (failing) *failing = static_cast<int>(ci);
      return std::nullopt;
    }
    for (const auto& c : local->constraints) {
      int rel = out.add_rel(local->rel_names[c.rel], local->rels[c.rel]);
      std::vector<int> scope;
      for (int v : c.scope) scope.push_back(out.var_index(local->vars[v]));
      out.add_constraint_idx(rel, std::move(scope));
    }
  }
  return out;
}

EvalResult evaluate(const Instance& inst, const Backdoor& bd,
                    const SimplificationMap& map, const EvalOptions& opts) {
  std::vector<Mask> restrict_masks;
  const std::vector<Mask>* restrict_ptr = nullptr;
  if (opts.skip_trivial_relation) {
    Mask full = inst.scheme->full_mask();
    restrict_masks.assign(bd.pairs.size(), full);
    for (std::size_t p = 0; p < bd.pairs.size(); ++p)
      for (const auto& c : inst.constraints) {
        const auto* u = std::get_if<UnionRel>(&inst.rels[c.rel]);
        if (!u || c.scope.size() != 2) continue;
        auto e = std::minmax(c.scope[0], c.scope[1]);
        if (std::make_pair(e.first, e.second) != bd.pairs[p]) continue;
        restrict_masks[p] &= u->mask;
      }
    restrict_ptr = &restrict_masks;
  }
  auto alphas = consistent_alphas_impl(inst, bd, opts.oracle, restrict_ptr);

  TargetSolver solve = opts.target_solver;
  if (!solve)
    solve = [&](const Instance& t) {
      return find_certificate(t, opts.oracle).has_value();
    };

  enum { kUnsat, kSat, kUndef };
  std::vector<int> state(alphas.size(), kUnsat);
  std::vector<int> failing(alphas.size(), -1);
  parallel_for(static_cast<int>(alphas.size()), opts.jobs, [&](int a) {
    auto translated = translate_instance(inst, alphas[a], map, &failing[a]);
    if (!translated) {
      state[a] = kUndef;
      return;
    }
    state[a] = solve(*translated) ? kSat : kUnsat;
  });

  if (opts.trace && opts.trace_out) {
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      const char* res = state[a] == kSat    ? "SAT"
                        : state[a] == kUnsat ? "UNSAT"
                                             : "undef";
      *opts.trace_out << "alpha=" << alpha_str(inst, alphas[a])
                      << " consistent=true result=" << res << "\n";
    }
  }
  for (std::size_t a = 0; a < alphas.size(); ++a)
    if (state[a] == kUndef)
      throw NotABackdoor(alpha_str(inst, alphas[a]),
                         inst.constraint_str(inst.constraints[failing[a]]));

  EvalResult result;
  result.branches = static_cast<long long>(alphas.size());
  for (int s : state) result.sat = result.sat || s == kSat;
  return result;
}

namespace {

// First constraint in input order left undefined by some consistent alpha;
// also reports that alpha.
int first_violation(const Instance& inst, const SimplificationMap& map,
                    const std::vector<PairAssignment>& alphas,
                    const PairAssignment** which_alpha) {
  for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci)
    for (const auto& alpha : alphas) {
      ReducedKey key = make_key(inst, inst.constraints[ci], alpha);
      if (!map.entry_for(key)) {
        if (which_alpha) *which_alpha = &alpha;
        return static_cast<int>(ci);
      }
    }
  return -1;
}

std::optional<Backdoor> detect_rec(const Instance& inst, int k,
                                   const SimplificationMap& map,
                                   const DetectOptions& opts, Backdoor bd,
                                   long long& nodes) {
  ++nodes;
  auto alphas = consistent_alphas(inst, bd, opts.oracle);
  int viol = first_violation(inst, map, alphas, nullptr);
  if (viol < 0) return bd;
  if (bd.size() >= k) return std::nullopt;

  const Constraint& c = inst.constraints[viol];
  std::vector<std::pair<int, int>> branch_pairs;
  for (std::size_t p = 0; p < c.scope.size(); ++p)
    for (std::size_t q = p + 1; q < c.scope.size(); ++q) {
      if (c.scope[p] == c.scope[q]) continue;
      auto e = std::minmax(c.scope[p], c.scope[q]);
      auto pr = std::make_pair(e.first, e.second);
      if (bd.contains(pr.first, pr.second)) continue;
      if (std::find(branch_pairs.begin(), branch_pairs.end(), pr) !=
          branch_pairs.end())
        continue;
      branch_pairs.push_back(pr);
    }
  for (auto [x, y] : branch_pairs) {
    Backdoor child = bd;
    child.add(x, y);
    auto found = detect_rec(inst, k, map, opts, std::move(child), nodes);
    if (found) return found;
  }
  return std::nullopt;
}

}  // namespace

DetectResult detect(const Instance& inst, int k, const SimplificationMap& map,
                    const DetectOptions& opts) {
  DetectResult result;
  result.backdoor =
      detect_rec(inst, k, map, opts, Backdoor{}, result.nodes);
  return result;
}

bool validate_backdoor(const Instance& inst, const Backdoor& bd,
                       const SimplificationMap& map,
                       ValidationWitness* witness, const OracleOptions& opts) {
  auto alphas = consistent_alphas(inst, bd, opts);
  const PairAssignment* which = nullptr;
  int viol = first_violation(inst, map, alphas, &which);
  if (viol < 0) return true;
  if (witness) {
    witness->alpha = alpha_str(inst, *which);
    witness->constraint = viol;
  }
  return false;
}

Backdoor shrink(const Instance& inst, Backdoor bd, const SimplificationMap& map,
                const OracleOptions& opts) {
  std::size_t i = 0;
  while (i < bd.pairs.size()) {
    Backdoor trial = bd;
    trial.pairs.erase(trial.pairs.begin() + i);
    if (validate_backdoor(inst, trial, map, nullptr, opts))
      bd = std::move(trial);
    else
      ++i;
  }
  return bd;
}

}  // namespace scsp
