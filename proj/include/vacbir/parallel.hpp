#pragma once

#include <cstddef>
#include <functional>

namespace vacbir::parallel {

/// Worker count from VACBIR_THREADS, else the hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once; the first exception is rethrown after all workers
/// finish. Callers write results into per-index slots so the reduction
/// order stays fixed.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn,
                    unsigned threads = thread_count());

}  // namespace vacbir::parallel
