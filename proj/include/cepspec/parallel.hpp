#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cepspec {

// Worker count: CEPSPEC_THREADS if set to a positive integer, else hardware concurrency.
inline int default_thread_count() {
  if (const char* env = std::getenv("CEPSPEC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [begin, end) over contiguous chunks. Bodies must only write state
// owned by their index so results do not depend on the partitioning.
template <typename Body>
void parallel_for(int begin, int end, Body&& body, int threads = default_thread_count()) {
  const int n = end - begin;
  if (n <= 0) return;
  threads = std::clamp(threads, 1, n);
  if (threads == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * t / threads);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace cepspec
