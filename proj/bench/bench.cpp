// Compares the serial reference paths against the OpenMP ones on the two
// parallel kernels: simplification-map computation and backdoor branch
// evaluation. Fails (exit 1) if the parallel results ever differ from the
// serial ones.

#include <chrono>
#include <cstdio>

#include "scsp/backdoor.hpp"
#include "scsp/gadgets.hpp"
#include "scsp/language.hpp"
#include "scsp/parallel.hpp"
#include "scsp/simpmap.hpp"

using namespace scsp;

namespace {

template <class Fn>
double timed(Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  int jobs = hardware_jobs();
  std::printf("jobs available: %d\n", jobs);
  bool ok = true;

  SchemePtr rcc5 = load_scheme("rcc5");

  {
    Language source = all_unions(rcc5);
    Language target = basics_language(rcc5);
    SimplificationMap serial, parallel;
    double ts = timed([&] { serial = compute_simpmap(source, target, 4, 1); });
    double tp =
        timed([&] { parallel = compute_simpmap(source, target, 4, jobs); });
    bool same = serial.serialize() == parallel.serialize();
    ok = ok && same;
    std::printf(
        "simp map (rcc5 unions -> basics): serial %.3fs, %d jobs %.3fs, "
        "identical=%s\n",
        ts, jobs, tp, same ? "yes" : "no");
  }

  {
    DoorSpec spec;
    spec.kind = DoorSpec::Kind::Backdoor;
    spec.size = 4;
    Planted planted = generate_planted(rcc5, 7, spec, 7);
    const Instance& inst = planted.instance;
    Backdoor bd = make_backdoor(inst, planted.backdoor);
    Language source(rcc5);
    for (std::size_t r = 0; r < inst.rels.size(); ++r)
      source.add(inst.rel_names[r], inst.rels[r]);
    SimplificationMap map =
        compute_simpmap(source, basics_language(rcc5), 4, 1);

    EvalResult serial, parallel;
    EvalOptions opts1;
    opts1.jobs = 1;
    EvalOptions optsn;
    optsn.jobs = jobs;
    double ts = timed([&] { serial = evaluate(inst, bd, map, opts1); });
    double tp = timed([&] { parallel = evaluate(inst, bd, map, optsn); });
    bool same =
        serial.sat == parallel.sat && serial.branches == parallel.branches;
    ok = ok && same;
    std::printf(
        "backdoor evaluate (|B|=%d, %lld branches): serial %.3fs, %d jobs "
        "%.3fs, identical=%s\n",
        bd.size(), serial.branches, ts, jobs, tp, same ? "yes" : "no");
  }

  return ok ? 0 : 1;
}
