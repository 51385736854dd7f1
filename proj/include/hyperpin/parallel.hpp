#pragma once

// OpenMP helpers shared by the batch kernels. Every kernel takes an Execution
// argument; Execution::Serial runs the plain loop and is the reference that
// the parallel path is tested against. Results are always written by index,
// so both paths produce identical output.

#include <cstddef>
#include <exception>
#include <limits>

namespace hyperpin {

enum class Execution { Serial, Parallel };

/// Worker count used by Execution::Parallel (1 without OpenMP).
int max_threads();
/// Sets the worker count; values < 1 are ignored.
void set_threads(int threads);

/// Calls fn(i) for i in [0, count). In parallel mode an exception thrown by
/// fn is captured and the one from the lowest index is rethrown after the
/// loop, matching what the serial loop would have raised first.
template <typename Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const long long n = static_cast<long long>(count);
  std::exception_ptr error;
  long long error_index = std::numeric_limits<long long>::max();
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(hyperpin_for_each_index)
      if (i < error_index) {
        error_index = i;
        error = std::current_exception();
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hyperpin
