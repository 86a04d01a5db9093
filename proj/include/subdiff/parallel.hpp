#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subdiff {

enum class ExecMode { serial, parallel };

struct Exec {
  ExecMode mode = ExecMode::parallel;
  int workers = 0;  ///< 0 = OpenMP default

  static Exec serial() { return {ExecMode::serial, 1}; }
  static Exec parallel(int workers = 0) { return {ExecMode::parallel, workers}; }
};

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Evaluates f(i) for i in [0, n) and returns the results in index order.
/// Every path owns its random streams, so the output does not depend on the
/// worker count or the schedule; reductions over it are done serially by the caller.
template <class F>
auto map_paths(std::size_t n, const Exec& exec, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(n);
  const long long count = static_cast<long long>(n);
  if (exec.mode == ExecMode::serial) {
    for (long long i = 0; i < count; ++i) out[i] = f(static_cast<std::size_t>(i));
    return out;
  }
#ifdef _OPENMP
  const int workers = exec.workers > 0 ? exec.workers : omp_get_max_threads();
  std::exception_ptr error;
#pragma omp parallel for num_threads(workers) schedule(dynamic, 64)
  for (long long i = 0; i < count; ++i) {
    try {
      out[i] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(subdiff_map_paths_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
#else
  for (long long i = 0; i < count; ++i) out[i] = f(static_cast<std::size_t>(i));
#endif
  return out;
}

}  // namespace subdiff
