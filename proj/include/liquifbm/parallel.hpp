#pragma once

#include <cstddef>
#include <functional>

namespace liquifbm {

// Worker count: LIQUIFBM_THREADS if set to a positive integer, else the
// hardware concurrency. Results of parallel_for never depend on it.
std::size_t worker_count();

// Calls body(i) for every i < count, spread over worker_count() threads.
// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace liquifbm
