#pragma once
// Index-parallel loop.  Each index is handled exactly once and results are
// written by index, so output does not depend on the thread count.

#include <cstddef>
#include <functional>

namespace pretsums {

// min(hardware threads, PRETSUMS_THREADS if set), at least 1
unsigned thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace pretsums
