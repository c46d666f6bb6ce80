#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coarsekit {

/// Execution policy for the data-parallel kernels. Every parallel kernel has
/// a serial twin producing bitwise-identical results; tests compare the two
/// and the bench tool times them.
enum class Exec { serial, parallel };

template <typename F>
void parallel_for(std::size_t n, Exec exec, F&& body) {
  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

inline int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace coarsekit
