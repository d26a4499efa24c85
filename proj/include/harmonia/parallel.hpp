// Sample-level parallelism. Kernels write per-index results into preallocated
// storage; reductions happen afterwards in index order, so serial and parallel
// execution produce bit-identical output.
#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace harmonia {

enum class ExecMode { Serial, Parallel };

struct ExecPolicy {
  ExecMode mode = ExecMode::Parallel;
};

inline ExecPolicy serial_policy() { return ExecPolicy{ExecMode::Serial}; }

// Caps OpenMP threads; n <= 0 leaves the runtime default.
inline void set_thread_cap(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

template <class Fn>
void for_each_index(long long n, ExecPolicy policy, Fn&& fn) {
#ifdef _OPENMP
  if (policy.mode == ExecMode::Parallel) {
    #pragma omp parallel for schedule(dynamic, 32)
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
#else
  (void)policy;
#endif
  for (long long i = 0; i < n; ++i) fn(i);
}

}  // namespace harmonia
