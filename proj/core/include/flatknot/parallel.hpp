#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace flatknot {

// Worker count from FLATKNOT_THREADS (unset or 0: hardware concurrency).
std::size_t thread_count();

// Calls body(begin, end) on contiguous chunks of [0, n) from up to
// thread_count() threads. Chunks are disjoint, so results written by index
// are independent of the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace flatknot
