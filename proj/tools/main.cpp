#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scsp/backdoor.hpp"
#include "scsp/branchmap.hpp"
#include "scsp/gadgets.hpp"
#include "scsp/language.hpp"
#include "scsp/oracle.hpp"
#include "scsp/sidedoor.hpp"
#include "scsp/simpmap.hpp"

namespace {

using nlohmann::ordered_json;
using namespace scsp;

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitNone = 2;
constexpr int kExitError = 3;
constexpr int kExitUsage = 4;

long long ipow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (1LL << 56)) return 1LL << 60;  // saturate
    out *= base;
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Report printer: human-readable key/value lines, or one JSON line with
// --json. Machine output carries no timing so reruns are byte-identical.
struct Report {
  ordered_json j = ordered_json::object();
  bool as_json = false;

  void emit() const {
    if (as_json) {
      std::cout << j.dump() << "\n";
      return;
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_string())
        std::cout << key << ": " << value.get<std::string>() << "\n";
      else
        std::cout << key << ": " << value.dump() << "\n";
    }
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Language instance_language(const Instance& inst) {
  Language lang(inst.scheme);
  for (std::size_t r = 0; r < inst.rels.size(); ++r)
    lang.add(inst.rel_names[r], inst.rels[r]);
  return lang;
}

// Simplification map for an instance: an explicit file, the built-in R_k
// map, or a computed (and cached) map from the instance's relations to the
// scheme basics.
SimplificationMap get_simp_map(const Instance& inst, const std::string& arg,
                               int jobs) {
  if (arg == "builtin:rk") return make_builtin_rk_map(inst.scheme);
  if (!arg.empty() && arg != "auto") return load_map_file(arg, inst.scheme);

  Language source = instance_language(inst);
  Language target = basics_language(inst.scheme);
  std::string desc = "scheme=" + inst.scheme->name + ";cap=4;target=basics";
  for (int s = 0; s < source.size(); ++s)
    desc += ";" + source.names[s] + "=" +
            relation_to_json(source.rels[s], *inst.scheme);

  const char* cache = std::getenv("SHORTCUT_CSP_CACHE");
  std::string path;
  if (cache && *cache) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(desc)));
    path = std::string(cache) + "/" + buf + ".map.json";
    if (std::filesystem::exists(path)) return load_map_file(path, inst.scheme);
  }
  SimplificationMap map = compute_simpmap(source, target, 4, jobs);
  if (!path.empty()) {
    std::filesystem::create_directories(cache);
    write_file(path, map.serialize());
  }
  return map;
}

BranchingMap get_branch_map(const Instance& inst, int radius,
                            const std::string& omega_arg,
                            const std::string& defs_arg) {
  if (omega_arg == "omega2") return make_omega2();
  if (omega_arg == "omega3") return make_omega3();
  if (omega_arg == "delta") return make_delta_map();
  if (!omega_arg.empty()) throw Error("unknown branching map " + omega_arg);
  Language source = instance_language(inst);
  if (!defs_arg.empty()) {
    Language target = inst.scheme->name == "rcc5"
                          ? rcc5_gamma_prime(inst.scheme)
                          : basics_language(inst.scheme);
    auto defs = parse_definitions(read_file(defs_arg), source);
    return synthesize(source, target, radius, std::move(defs));
  }
  if (inst.scheme->name == "rcc5" && radius == 2) return make_omega2();
  if (inst.scheme->name == "rcc5" && radius == 3) return make_omega3();
  return synthesize_from_backdoor_triple(source,
                                         basics_language(inst.scheme), radius);
}

Backdoor parse_backdoor_file(const std::string& path, const Instance& inst) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(path));
  } catch (const ordered_json::exception& e) {
    throw ParseError(e.what());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  try {
    for (const auto& jp : j.at("pairs")) pairs.push_back({jp.at(0), jp.at(1)});
  } catch (const ordered_json::exception& e) {
    throw ParseError(e.what());
  }
  return make_backdoor(inst, pairs);
}

std::string serialize_backdoor(const Backdoor& bd, const Instance& inst) {
  ordered_json j;
  ordered_json pairs = ordered_json::array();
  for (auto [x, y] : bd.pairs)
    pairs.push_back({inst.vars[x], inst.vars[y]});
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

TMembership default_membership(const Instance& inst) {
  TMembership mem;
  mem.target = inst.scheme->name == "rcc5" ? rcc5_gamma_prime(inst.scheme)
                                           : basics_language(inst.scheme);
  mem.semantic = true;
  return mem;
}

struct SolveArgs {
  std::string instance_path;
  std::string strategy = "oracle";
  std::string door_path;
  std::string map_path;
  std::string omega;
  std::string defs_path;
  bool json = false;
  bool trace = false;
  bool skip_trivial = false;
  int jobs = 1;
};

int cmd_solve(const SolveArgs& args) {
  Instance inst = parse_instance_file(args.instance_path);
  Report report;
  report.as_json = args.json;
  report.j["command"] = "solve";
  report.j["instance"] = args.instance_path;
  report.j["scheme"] = inst.scheme->name;
  report.j["variables"] = inst.vars.size();
  report.j["constraints"] = inst.constraints.size();
  report.j["strategy"] = args.strategy;

  bool sat = false;
  if (args.strategy == "oracle") {
    auto cert = find_certificate(inst);
    sat = cert.has_value();
    if (sat)
      report.j["certificate"] =
          ordered_json::parse(certificate_to_json(*cert, inst));
  } else if (args.strategy == "backdoor") {
    Backdoor bd = parse_backdoor_file(args.door_path, inst);
    SimplificationMap map = get_simp_map(inst, args.map_path, args.jobs);
    EvalOptions opts;
    opts.jobs = args.jobs;
    opts.skip_trivial_relation = args.skip_trivial;
    opts.trace = args.trace;
    opts.trace_out = &std::cerr;
    EvalResult res = evaluate(inst, bd, map, opts);
    sat = res.sat;
    int m = inst.scheme->size() - (args.skip_trivial ? 1 : 0);
    long long bound = ipow(m, bd.size());
    report.j["branches"] = res.branches;
    report.j["bound"] = std::string(args.skip_trivial ? "(m-1)^|B|" : "m^|B|") +
                        " = " + std::to_string(bound);
    report.j["bound_ok"] = res.branches <= bound;
  } else if (args.strategy == "sidedoor") {
    Sidedoor sd = parse_sidedoor(read_file(args.door_path), inst);
    BranchingMap map =
        get_branch_map(inst, sd.radius, args.omega, args.defs_path);
    SidedoorEvalOptions opts;
    opts.trace = args.trace;
    opts.trace_out = &std::cerr;
    opts.membership = default_membership(inst);
    SidedoorEvalResult res = evaluate_sidedoor(inst, sd, map, opts);
    sat = res.sat;
    long long c = std::max(1, map.branching_factor());
    long long bound = ipow(c, sd.size());
    report.j["leaves"] = res.leaves;
    report.j["branching_factor"] = c;
    report.j["bound"] = "c^|S| = " + std::to_string(bound);
    report.j["bound_ok"] = res.leaves <= bound;
  } else {
    throw CLI::ValidationError("--strategy", "unknown strategy");
  }
  report.j["answer"] = sat ? "SAT" : "UNSAT";
  report.emit();
  return sat ? kExitSat : kExitUnsat;
}

struct DetectArgs {
  std::string instance_path;
  std::string kind = "backdoor";
  int k = 0;
  int r = 3;
  std::string map_path;
  std::string out_path;
  bool json = false;
  int jobs = 1;
};

int cmd_detect(const DetectArgs& args) {
  Instance inst = parse_instance_file(args.instance_path);
  Report report;
  report.as_json = args.json;
  report.j["command"] = "detect";
  report.j["instance"] = args.instance_path;
  report.j["scheme"] = inst.scheme->name;
  report.j["kind"] = args.kind;
  report.j["k"] = args.k;

  bool found = false;
  if (args.kind == "backdoor") {
    SimplificationMap map = get_simp_map(inst, args.map_path, args.jobs);
    DetectResult res = detect(inst, args.k, map);
    int a = 2;
    for (const auto& c : inst.constraints)
      a = std::max(a, static_cast<int>(c.scope.size()));
    long long pairs = static_cast<long long>(a) * (a - 1) / 2;
    long long bound = pairs >= 2 ? ipow(pairs, args.k + 1) : args.k + 1;
    report.j["nodes"] = res.nodes;
    report.j["bound"] = "C(a,2)^(k+1) = " + std::to_string(bound);
    report.j["bound_ok"] = res.nodes <= bound;
    found = res.backdoor.has_value();
    if (found) {
      report.j["size"] = res.backdoor->size();
      ordered_json pairs_json = ordered_json::array();
      for (auto [x, y] : res.backdoor->pairs)
        pairs_json.push_back({inst.vars[x], inst.vars[y]});
      report.j["door"] = pairs_json;
      if (!args.out_path.empty())
        write_file(args.out_path, serialize_backdoor(*res.backdoor, inst));
    }
  } else if (args.kind == "sidedoor") {
    TMembership mem = default_membership(inst);
    SidedoorDetectResult res = detect_sidedoor(inst, args.r, args.k, mem);
    report.j["r"] = args.r;
    report.j["bound"] =
        "(rk)^(rk) = " + std::to_string(ipow(static_cast<long long>(args.r) *
                                                 args.k,
                                             args.r * args.k));
    found = res.sidedoor.has_value();
    if (found) {
      report.j["size"] = res.sidedoor->size();
      report.j["door"] =
          ordered_json::parse(serialize_sidedoor(*res.sidedoor, inst));
      if (!args.out_path.empty())
        write_file(args.out_path, serialize_sidedoor(*res.sidedoor, inst));
    }
  } else {
    throw CLI::ValidationError("--kind", "unknown kind");
  }
  report.j["answer"] = found ? "FOUND" : "NONE";
  report.emit();
  return found ? kExitSat : kExitNone;
}

struct ComputeMapArgs {
  std::string kind = "simp";
  std::string scheme = "rcc5";
  std::string source = "all-unions";
  std::string target = "basics";
  std::string defs_path;
  int r = 2;
  int cap = 4;
  int jobs = 1;
  std::string out_path;
  bool json = false;
};

Language named_language(const std::string& name, SchemePtr scheme) {
  if (name == "all-unions") return all_unions(scheme);
  if (name == "basics") return basics_language(scheme);
  if (name == "gamma-prime") return rcc5_gamma_prime(scheme);
  if (name == "delta") {
    Language lang(scheme);
    lang.add("delta", build_delta());
    return lang;
  }
  ordered_json j;
  try {
    j = ordered_json::parse(read_file(name));
  } catch (const ordered_json::exception& e) {
    throw ParseError(e.what());
  }
  Language lang(scheme);
  for (const auto& [rel_name, jrel] : j.at("relations").items())
    lang.add(rel_name, relation_from_json_text(jrel.dump(), *scheme, rel_name));
  return lang;
}

int cmd_compute_map(const ComputeMapArgs& args) {
  SchemePtr scheme = load_scheme(args.scheme);
  Language source = named_language(args.source, scheme);
  Language target = named_language(args.target, scheme);
  Report report;
  report.as_json = args.json;
  report.j["command"] = "compute-map";
  report.j["kind"] = args.kind;
  report.j["scheme"] = scheme->name;

  if (args.kind == "simp") {
    SimplificationMap map = compute_simpmap(source, target, args.cap, args.jobs);
    report.j["entries"] = map.entries.size();
    if (!args.out_path.empty()) write_file(args.out_path, map.serialize());
  } else if (args.kind == "branch") {
    BranchingMap map;
    if (!args.defs_path.empty()) {
      auto defs = parse_definitions(read_file(args.defs_path), source);
      map = synthesize(source, target, args.r, std::move(defs));
    } else {
      map = synthesize_from_backdoor_triple(source, target, args.r);
    }
    // Warm the memo with every single-relation key so the dump and the
    // reported factor are meaningful.
    for (int s = 0; s < source.size(); ++s) {
      int arity = relation_arity(source.rels[s]);
      Instance local;
      local.scheme = scheme;
      for (int v = 0; v < arity; ++v) local.add_var("v" + std::to_string(v));
      int rel = local.add_rel(source.names[s], source.rels[s]);
      std::vector<int> scope;
      for (int v = 0; v < arity; ++v) scope.push_back(v);
      local.add_constraint_idx(rel, std::move(scope));
      map.apply(local);
    }
    report.j["radius"] = map.radius;
    report.j["branching_factor"] = map.branching_factor();
    if (!args.out_path.empty()) write_file(args.out_path, map.dump());
  } else {
    throw CLI::ValidationError("--kind", "unknown kind");
  }
  report.emit();
  return kExitSat;
}

struct GenArgs {
  std::string kind = "planted-backdoor";
  std::string scheme = "rcc5";
  int n = 6;
  int pairs = 2;
  double density = 0.5;
  unsigned seed = 1;
  std::string in_path;
  std::string out_prefix = "generated";
  bool json = false;
};

int cmd_gen(const GenArgs& args) {
  Report report;
  report.as_json = args.json;
  report.j["command"] = "gen";
  report.j["kind"] = args.kind;
  report.j["seed"] = args.seed;

  if (args.kind == "planted-backdoor" || args.kind == "planted-sidedoor") {
    DoorSpec spec;
    spec.kind = args.kind == "planted-backdoor" ? DoorSpec::Kind::Backdoor
                                                : DoorSpec::Kind::Sidedoor;
    spec.size = args.pairs;
    spec.density = args.density;
    Planted planted =
        generate_planted(load_scheme(args.scheme), args.n, spec, args.seed);
    std::string inst_path = args.out_prefix + ".json";
    write_file(inst_path, serialize_instance(planted.instance));
    report.j["instance"] = inst_path;
    std::string door_path = args.out_prefix + ".door.json";
    if (spec.kind == DoorSpec::Kind::Backdoor) {
      Backdoor bd = make_backdoor(planted.instance, planted.backdoor);
      write_file(door_path, serialize_backdoor(bd, planted.instance));
    } else {
      Sidedoor sd;
      sd.radius = planted.radius;
      for (const auto& set : planted.sidedoor_sets) {
        std::vector<int> idx;
        for (const auto& v : set) idx.push_back(planted.instance.var_index(v));
        std::sort(idx.begin(), idx.end());
        sd.sets.push_back(std::move(idx));
      }
      write_file(door_path, serialize_sidedoor(sd, planted.instance));
    }
    report.j["door"] = door_path;
  } else if (args.kind == "hitting-set") {
    HittingSetInstance hs = parse_hitting_set(read_file(args.in_path));
    BackdoorDetectionInput out = hitting_set_reduction(hs);
    std::string inst_path = args.out_prefix + ".json";
    write_file(inst_path, serialize_instance(out.instance));
    report.j["instance"] = inst_path;
    report.j["k"] = out.k;
  } else if (args.kind == "edge-partition") {
    Graph g = parse_graph(read_file(args.in_path));
    SidedoorDetectionInput out = edge_partition_reduction(g);
    std::string inst_path = args.out_prefix + ".json";
    write_file(inst_path, serialize_instance(out.instance));
    report.j["instance"] = inst_path;
    report.j["r"] = out.r;
    report.j["k"] = out.k;
  } else {
    throw CLI::ValidationError("--kind", "unknown kind");
  }
  report.emit();
  return kExitSat;
}

struct BenchArgs {
  std::string suite_path;
  unsigned seed = 1;
  std::string out_path;
  int jobs = 1;
};

int cmd_bench(const BenchArgs& args) {
  ordered_json suite;
  try {
    suite = ordered_json::parse(read_file(args.suite_path));
  } catch (const ordered_json::exception& e) {
    throw ParseError(e.what());
  }
  std::string kind = suite.value("kind", "planted-backdoor");
  std::string scheme_name = suite.value("scheme", "rcc5");
  std::string strategy = suite.value("strategy", "backdoor");
  int count = suite.value("count", 20);
  int n = suite.value("n", 6);
  int pairs = suite.value("pairs", 2);
  double density = suite.value("density", 0.5);

  SchemePtr scheme = load_scheme(scheme_name);
  std::ostringstream csv;
  csv << "kind,strategy,seed,vars,constraints,answer,counter,bound,ok\n";
  for (int i = 0; i < count; ++i) {
    unsigned seed = args.seed + static_cast<unsigned>(i);
    DoorSpec spec;
    spec.kind = kind == "planted-sidedoor" ? DoorSpec::Kind::Sidedoor
                                           : DoorSpec::Kind::Backdoor;
    spec.size = pairs;
    spec.density = density;
    Planted planted = generate_planted(scheme, n, spec, seed);
    const Instance& inst = planted.instance;

    bool sat = false;
    long long counter = 0, bound = 0;
    if (strategy == "oracle") {
      sat = find_certificate(inst).has_value();
      bound = 1;
      counter = 0;
    } else if (strategy == "backdoor") {
      Backdoor bd = make_backdoor(inst, planted.backdoor);
      SimplificationMap map = get_simp_map(inst, "auto", args.jobs);
      EvalOptions opts;
      opts.jobs = args.jobs;
      EvalResult res = evaluate(inst, bd, map, opts);
      sat = res.sat;
      counter = res.branches;
      bound = ipow(scheme->size(), bd.size());
    } else if (strategy == "sidedoor") {
      Sidedoor sd;
      BranchingMap map;
      if (spec.kind == DoorSpec::Kind::Sidedoor) {
        sd.radius = planted.radius;
        for (const auto& set : planted.sidedoor_sets) {
          std::vector<int> idx;
          for (const auto& v : set) idx.push_back(inst.var_index(v));
          std::sort(idx.begin(), idx.end());
          sd.sets.push_back(std::move(idx));
        }
        map = make_omega3();
      } else {
        sd.radius = 2;
        for (const auto& [a, b] : planted.backdoor) {
          std::vector<int> idx = {inst.var_index(a), inst.var_index(b)};
          std::sort(idx.begin(), idx.end());
          sd.sets.push_back(std::move(idx));
        }
        map = make_omega2();
      }
      SidedoorEvalOptions opts;
      opts.membership = default_membership(inst);
      SidedoorEvalResult res = evaluate_sidedoor(inst, sd, map, opts);
      sat = res.sat;
      counter = res.leaves;
      bound = ipow(std::max(1, map.branching_factor()), sd.size());
    } else {
      throw Error("unknown bench strategy " + strategy);
    }
    bool ok = counter <= bound || strategy == "oracle";
    if (!ok) throw Error("bound violated at seed " + std::to_string(seed));
    csv << kind << "," << strategy << "," << seed << "," << inst.vars.size()
        << "," << inst.constraints.size() << "," << (sat ? "SAT" : "UNSAT")
        << "," << counter << "," << bound << "," << (ok ? "yes" : "no")
        << "\n";
  }
  if (args.out_path.empty())
    std::cout << csv.str();
  else
    write_file(args.out_path, csv.str());
  return kExitSat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backdoors and sidedoors for infinite-domain CSPs over "
               "partition schemes"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Decide satisfiability");
  solve->add_option("instance", solve_args.instance_path)->required();
  solve->add_option("--strategy", solve_args.strategy)
      ->check(CLI::IsMember({"oracle", "backdoor", "sidedoor"}));
  solve->add_option("--door", solve_args.door_path);
  solve->add_option("--map", solve_args.map_path);
  solve->add_option("--omega", solve_args.omega);
  solve->add_option("--defs", solve_args.defs_path);
  solve->add_flag("--json", solve_args.json);
  solve->add_flag("--trace", solve_args.trace);
  solve->add_flag("--skip-trivial", solve_args.skip_trivial);
  solve->add_option("--jobs", solve_args.jobs);

  DetectArgs detect_args;
  auto* det = app.add_subcommand("detect", "Find a backdoor or sidedoor");
  det->add_option("instance", detect_args.instance_path)->required();
  det->add_option("--kind", detect_args.kind)
      ->check(CLI::IsMember({"backdoor", "sidedoor"}));
  det->add_option("--k", detect_args.k)->required();
  det->add_option("--r", detect_args.r);
  det->add_option("--map", detect_args.map_path);
  det->add_option("--out", detect_args.out_path);
  det->add_flag("--json", detect_args.json);
  det->add_option("--jobs", detect_args.jobs);

  ComputeMapArgs map_args;
  auto* cmap = app.add_subcommand("compute-map", "Compute a map off-line");
  cmap->add_option("--kind", map_args.kind)
      ->check(CLI::IsMember({"simp", "branch"}));
  cmap->add_option("--scheme", map_args.scheme);
  cmap->add_option("--source", map_args.source);
  cmap->add_option("--target", map_args.target);
  cmap->add_option("--defs", map_args.defs_path);
  cmap->add_option("--r", map_args.r);
  cmap->add_option("--cap", map_args.cap);
  cmap->add_option("--jobs", map_args.jobs);
  cmap->add_option("--out", map_args.out_path);
  cmap->add_flag("--json", map_args.json);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->add_option("--kind", gen_args.kind)
      ->check(CLI::IsMember({"planted-backdoor", "planted-sidedoor",
                             "hitting-set", "edge-partition"}));
  gen->add_option("--scheme", gen_args.scheme);
  gen->add_option("--n", gen_args.n);
  gen->add_option("--pairs", gen_args.pairs);
  gen->add_option("--density", gen_args.density);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--in", gen_args.in_path);
  gen->add_option("--out", gen_args.out_prefix);
  gen->add_flag("--json", gen_args.json);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
  bench->add_option("suite", bench_args.suite_path)->required();
  bench->add_option("--seed", bench_args.seed);
  bench->add_option("--out", bench_args.out_path);
  bench->add_option("--jobs", bench_args.jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) {
      if ((solve_args.strategy == "backdoor" ||
           solve_args.strategy == "sidedoor") &&
          solve_args.door_path.empty()) {
        std::cerr << "solve: --door is required for strategy "
                  << solve_args.strategy << "\n";
        return kExitUsage;
      }
      if (solve_args.strategy == "backdoor" && solve_args.map_path.empty()) {
        std::cerr << "solve: --map is required for strategy backdoor "
                     "(a file, \"auto\", or \"builtin:rk\")\n";
        return kExitUsage;
      }
      return cmd_solve(solve_args);
    }
    if (*det) return cmd_detect(detect_args);
    if (*cmap) return cmd_compute_map(map_args);
    if (*gen) {
      if ((gen_args.kind == "hitting-set" ||
           gen_args.kind == "edge-partition") &&
          gen_args.in_path.empty()) {
        std::cerr << "gen: --in is required for kind " << gen_args.kind << "\n";
        return kExitUsage;
      }
      return cmd_gen(gen_args);
    }
    if (*bench) return cmd_bench(bench_args);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
