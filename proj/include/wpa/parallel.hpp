#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace wpa {

// Worker count: set_max_threads override if positive, else WPA_THREADS, else
// hardware concurrency.
int max_threads();
void set_max_threads(int n);

// Runs body(i) for i in [0, count). Work is split into contiguous blocks, so
// callers that write into per-index slots and reduce afterwards in index order
// get results independent of the thread count. The exception raised at the
// lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace wpa
