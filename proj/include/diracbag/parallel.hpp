#pragma once

#include <cstddef>
#include <functional>

namespace diracbag {

/// Worker threads available to the library: hardware concurrency, capped by
/// the DIRAC_BAG_THREADS environment variable when it holds a positive integer.
unsigned worker_count();

/// Runs fn(0..n-1) across worker_count() threads. Each index is visited once;
/// callers write to distinct slots so results do not depend on scheduling.
/// The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

} // namespace diracbag
