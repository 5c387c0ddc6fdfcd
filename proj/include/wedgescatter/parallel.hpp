#pragma once

#include <cstddef>
#include <functional>

namespace wedgescatter {

/// Worker cap: WEDGESCATTER_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to `workers` threads. Each index runs exactly
/// once; the first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers = worker_count());

}  // namespace wedgescatter
