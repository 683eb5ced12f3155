#pragma once

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scsp {

// Runs fn(i) for i in [0, n). jobs <= 1 takes the plain serial loop, which
// doubles as the reference path; callers must not depend on execution order.
// The first exception thrown by any iteration is rethrown after the loop.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
#ifdef _OPENMP
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errs[i] = std::current_exception();
    }
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace scsp
