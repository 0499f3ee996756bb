#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rho {

// Worker cap from RHO_LAB_THREADS, defaulting to the hardware concurrency.
inline int thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* v = std::getenv("RHO_LAB_THREADS")) {
    const long k = std::strtol(v, nullptr, 10);
    return k >= 1 ? static_cast<int>(std::min<long>(k, hw)) : 1;
  }
  return static_cast<int>(hw);
}

// Runs body(i) for i in [0, count). Callers keep determinism by writing
// results into index-addressed storage.
template <typename F>
void parallel_for(int count, int threads, F&& body) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace rho
