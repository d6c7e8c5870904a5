#pragma once

#include <cstddef>
#include <functional>

namespace dwrosn {

// Worker count: DWROSN_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
int default_thread_count();

// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
// Iterations must be independent. The first exception thrown by any
// iteration is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace dwrosn
