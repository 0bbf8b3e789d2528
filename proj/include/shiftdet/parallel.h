#pragma once

#include <cstddef>

#include "shiftdet/types.h"

namespace shiftdet {

// Runs body(i) for i in [0, n). Iterations must be independent.
template <class Body>
void for_each_index(std::size_t n, ExecPolicy policy, Body&& body) {
  if (policy == ExecPolicy::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
}

// Number of OpenMP worker threads available (1 when built without OpenMP).
int available_threads();

// Caps the OpenMP team size; values < 1 are ignored.
void set_thread_cap(int threads);

}  // namespace shiftdet
