#pragma once

#include <cstddef>
#include <exception>

namespace qwork {

/// serial: single-threaded reference path; parallel: OpenMP.
enum class Execution { serial, parallel };

/// Number of worker threads OpenMP regions will use (1 without OpenMP).
int max_threads();

/// Caps OpenMP parallelism; values < 1 are ignored.
void set_thread_cap(int threads);

/// Applies QWORK_THREADS if set to a positive integer. Returns the cap in
/// effect afterwards.
int apply_thread_env();

/// Calls fn(i) for i in [0, n). The first exception thrown by any iteration is
/// rethrown after the loop; exceptions never cross the OpenMP region.
template <typename Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qwork_for_each_index)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace qwork
