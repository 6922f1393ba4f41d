#pragma once

#include <cstddef>
#include <functional>

namespace qcorr {

// Upper bound on worker threads used by grid evaluations; 0 means
// std::thread::hardware_concurrency().
void set_max_threads(unsigned n);
unsigned max_threads();

// Calls body(i) for every i in [0, n). Work is split into contiguous
// slabs; callers write results by index so the outcome does not depend on
// the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qcorr
