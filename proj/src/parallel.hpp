#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hillspec::detail {

// Worker count: explicit request, else HILLSPEC_THREADS, else hardware concurrency.
inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HILLSPEC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n). The first exception is rethrown after all
// workers join. Results must be written to disjoint slots.
template <class Body>
void parallel_for(int n, int requested_threads, Body&& body) {
  const int workers = std::min(worker_count(requested_threads), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hillspec::detail
