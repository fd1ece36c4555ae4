#pragma once

#include <cstddef>
#include <functional>

namespace fishschool {

/// Runs task(i) for every i in [0, n) on up to `workers` threads. Tasks pull
/// indices from a shared counter; callers write results into slot i so the
/// merge order never depends on scheduling. If tasks throw, the exception of
/// the lowest failing index is rethrown after all threads join.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& task);

/// Clamp a requested worker count to [1, hardware threads * 4].
int resolve_workers(int requested);

}  // namespace fishschool
