#pragma once

#include <cstddef>
#include <cstdint>

namespace mesoc {

enum class Execution { serial, parallel };

/// Worker count for parallel kernels: the OpenMP default, capped by the
/// MESOC_KIT_THREADS environment variable when it holds a positive integer.
int worker_count();

/// Runs fn(i) for i in [0, n). Each call must only write state owned by index
/// i; results are then independent of the execution mode.
template <class Fn>
void for_each_index(std::size_t n, Execution exec, Fn&& fn) {
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::serial) {
    for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
    return;
  }
  const int workers = worker_count();
#pragma omp parallel for schedule(static) num_threads(workers)
  for (std::int64_t i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace mesoc
