#include "scsp/sidedoor.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace scsp {

Sidedoor parse_sidedoor(const std::string& json_text, const Instance& inst) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  Sidedoor sd;
  try {
    sd.radius = j.at("radius");
    for (const auto& js : j.at("sets")) {
      std::vector<int> set;
      for (const auto& v : js) set.push_back(inst.var_index(v));
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      sd.sets.push_back(std::move(set));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return sd;
}

std::string serialize_sidedoor(const Sidedoor& sd, const Instance& inst) {
  nlohmann::ordered_json j;
  j["radius"] = sd.radius;
  nlohmann::ordered_json sets = nlohmann::ordered_json::array();
  for (const auto& set : sd.sets) {
    nlohmann::ordered_json js = nlohmann::ordered_json::array();
    for (int v : set) js.push_back(inst.vars[v]);
    sets.push_back(js);
  }
  j["sets"] = sets;
  return j.dump(2) + "\n";
}

bool TMembership::contains(const Instance& inst, int rel) const {
  if (target.contains(inst.rel_names[rel])) return true;
  if (!semantic) return false;
  const auto* u = std::get_if<UnionRel>(&inst.rels[rel]);
  return u && target.index_of_mask(u->mask) >= 0;
}

bool validate_sidedoor(const Instance& inst, const Sidedoor& sd,
                       const TMembership& membership, int* failing) {
  for (const auto& set : sd.sets)
    if (static_cast<int>(set.size()) > sd.radius) {
      if (failing) *failing = -1;
      return false;
    }
  for (int ci = 0; ci < static_cast<int>(inst.constraints.size()); ++ci) {
    const Constraint& c = inst.constraints[ci];
    if (membership.contains(inst, c.rel)) continue;
    bool covered = false;
    for (const auto& set : sd.sets) {
      bool inside = std::all_of(c.scope.begin(), c.scope.end(), [&](int v) {
        return std::binary_search(set.begin(), set.end(), v);
      });
      covered = covered || inside;
    }
    if (!covered) {
      if (failing) *failing = ci;
      return false;
    }
  }
  return true;
}

namespace {

struct EvalContext {
  const BranchingMap& map;
  const SidedoorEvalOptions& opts;
  TargetSolver solve;
  long long leaves = 0;
};

bool eval_rec(EvalContext& ctx, const Instance& inst, const Sidedoor& sd,
              std::size_t idx, int depth) {
  if (idx == sd.sets.size()) {
    ++ctx.leaves;
    for (int ci = 0; ci < static_cast<int>(inst.constraints.size()); ++ci)
      if (!ctx.opts.membership.contains(inst, inst.constraints[ci].rel))
        throw NotASidedoor("leaf instance still holds " +
                           inst.constraint_str(inst.constraints[ci]));
    bool sat = ctx.solve(inst);
    if (ctx.opts.trace && ctx.opts.trace_out)
      *ctx.opts.trace_out << "depth=" << depth
                          << " leaf result=" << (sat ? "SAT" : "UNSAT")
                          << "\n";
    return sat;
  }

  // Widen the chosen set to the radius with the smallest unused variables.
  std::vector<int> window = sd.sets[idx];
  std::vector<std::string> names;
  for (int v : window) names.push_back(inst.vars[v]);
  std::vector<std::string> unused;
  for (const auto& v : inst.vars)
    if (std::find(names.begin(), names.end(), v) == names.end())
      unused.push_back(v);
  std::sort(unused.begin(), unused.end());
  for (const auto& v : unused) {
    if (static_cast<int>(names.size()) >= ctx.map.radius) break;
    names.push_back(v);
  }

  Instance local = restrict(inst, names);
  auto branches = ctx.map.apply(local);
  std::string set_str;
  for (std::size_t i = 0; i < names.size(); ++i)
    set_str += (i ? "," : "") + names[i];
  bool sat = false;
  for (std::size_t bi = 0; bi < branches.size() && !sat; ++bi) {
    Instance spliced = splice(inst, branches[bi]);
    if (ctx.opts.trace && ctx.opts.trace_out)
      *ctx.opts.trace_out << "depth=" << depth << " set={" << set_str
                          << "} branch=" << bi << "\n";
    if (ctx.opts.debug_invariant) {
      Sidedoor rest{sd.radius, {sd.sets.begin() +
                                    static_cast<std::ptrdiff_t>(idx) + 1,
                                sd.sets.end()}};
      if (!validate_sidedoor(spliced, rest, ctx.opts.membership))
        throw Error("remaining sets are not a sidedoor of the spliced branch");
    }
    sat = eval_rec(ctx, spliced, sd, idx + 1, depth + 1);
  }
  return sat;
}

}  // namespace

SidedoorEvalResult evaluate_sidedoor(const Instance& inst, const Sidedoor& sd,
                                     const BranchingMap& map,
                                     const SidedoorEvalOptions& opts) {
  if (sd.radius != map.radius)
    throw RadiusMismatch("sidedoor radius " + std::to_string(sd.radius) +
                         " vs map radius " + std::to_string(map.radius));
  SidedoorEvalOptions local_opts = opts;
  if (local_opts.membership.target.names.empty())
    local_opts.membership.target = map.target;
  EvalContext ctx{map, local_opts, opts.target_solver, 0};
  if (!ctx.solve)
    ctx.solve = [&](const Instance& t) {
      return find_certificate(t, opts.oracle).has_value();
    };
  SidedoorEvalResult result;
  result.sat = eval_rec(ctx, inst, sd, 0, 0);
  result.leaves = ctx.leaves;
  return result;
}

namespace {

void subsets_of_size(const std::vector<int>& pool, int size,
                     std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

SidedoorDetectResult detect_sidedoor(const Instance& inst, int r, int k,
                                     const TMembership& membership) {
  std::set<int> core;  // variables of non-target constraints
  for (const auto& c : inst.constraints)
    if (!membership.contains(inst, c.rel))
      core.insert(c.scope.begin(), c.scope.end());

  SidedoorDetectResult result;
  if (core.empty()) {
    result.sidedoor = Sidedoor{r, {}};
    return result;
  }
  if (static_cast<int>(core.size()) > r * k) return result;

  std::vector<int> pool(core.begin(), core.end());
  int set_size = std::min<int>(r, static_cast<int>(pool.size()));
  std::vector<std::vector<int>> subsets;
  subsets_of_size(pool, set_size, subsets);

  // Families as non-decreasing index tuples: lexicographic, overlap and
  // repetition allowed (a repeated set is just a smaller family).
  std::vector<int> pickidx;
  std::function<bool(int)> rec = [&](int from) {
    if (static_cast<int>(pickidx.size()) == k) {
      Sidedoor sd;
      sd.radius = r;
      for (int i : pickidx) sd.sets.push_back(subsets[i]);
      if (validate_sidedoor(inst, sd, membership)) {
        std::sort(sd.sets.begin(), sd.sets.end());
        sd.sets.erase(std::unique(sd.sets.begin(), sd.sets.end()),
                      sd.sets.end());
        result.sidedoor = std::move(sd);
        return true;
      }
      return false;
    }
    for (int i = from; i < static_cast<int>(subsets.size()); ++i) {
      pickidx.push_back(i);
      if (rec(i)) return true;
      pickidx.pop_back();
    }
    return false;
  };
  rec(0);
  return result;
}

}  // namespace scsp
