#pragma once

#include <functional>

namespace gaborflow {

// Number of worker threads: hardware concurrency capped by the
// GABORFLOW_THREADS environment variable.
int thread_count();

// Deterministic block partition of [0, n); work(begin, end) per block.
void parallel_for(int n, const std::function<void(int, int)>& work);

}  // namespace gaborflow
