#pragma once

#include <cstddef>
#include <functional>

namespace halfline {

/// Worker count: hardware concurrency, capped by BELL_HALFLINE_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; callers write results by index and reduce in index
/// order afterwards, so output never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace halfline
