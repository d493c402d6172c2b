#pragma once

#include <functional>

namespace floq {

// Runs fn(0..n-1) on up to `workers` threads. Callers own any ordering
// requirements: results must be written to per-index slots and reduced
// sequentially afterwards. The first escaped exception is rethrown on the
// calling thread after all workers join.
void parallel_for_index(int n, int workers, const std::function<void(int)>& fn);

}  // namespace floq
