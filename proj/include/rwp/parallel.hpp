#pragma once

#include <cstddef>
#include <functional>

namespace rwp {

// Worker count: RWP_THREADS if set to a positive integer, else hardware concurrency.
unsigned worker_count();

// Calls body(i) for every i in [0, count). Indices are split into contiguous
// blocks across workers; body must only write state owned by index i, which
// makes results independent of the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned workers = 0);

}  // namespace rwp
