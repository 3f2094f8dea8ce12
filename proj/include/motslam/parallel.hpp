#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP helpers shared by the solver kernels and the simulator. Reductions
// go through fixed-size blocks combined in block order, so results are
// bit-identical for any thread count (including the serial fallback built
// without OpenMP).

namespace motslam::par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

template <typename F>
void parallel_for(std::ptrdiff_t n, F&& f) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    f(static_cast<std::size_t>(i));
  }
}

/// Deterministic sum of f(0..n-1). Blocks of `block_size` items are reduced
/// serially and combined in index order; the summation order never depends
/// on the thread count.
template <typename T, typename F>
T block_sum(std::size_t n, T zero, F&& f, std::size_t block_size = 256) {
  if (n == 0) return zero;
  const std::size_t n_blocks = (n + block_size - 1) / block_size;
  std::vector<T> partial(n_blocks, zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * block_size;
    const std::size_t hi = std::min(lo + block_size, n);
    T acc = zero;
    for (std::size_t i = lo; i < hi; ++i) {
      acc += f(i);
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }
  T total = zero;
  for (const T& p : partial) {
    total += p;
  }
  return total;
}

}  // namespace motslam::par
