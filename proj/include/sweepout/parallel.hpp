#pragma once

#include <functional>

namespace sweepout {

/// Worker count: SWEEPOUT_THREADS if set and positive, else hardware
/// concurrency.
int thread_count();

/// Runs fn(i) for i in [0, n) over contiguous blocks. fn must only write
/// to slots owned by i so results do not depend on scheduling.
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace sweepout
