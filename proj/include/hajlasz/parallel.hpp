#pragma once

#include <cstddef>
#include <functional>

namespace hajlasz {

/// Worker count from HAJLASZ_THREADS (unset or 0 = hardware concurrency).
std::size_t thread_count();

/// Runs fn(i) for i in [0, n). Each index runs exactly once; callers write
/// into per-index slots so results do not depend on scheduling. The first
/// exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hajlasz
