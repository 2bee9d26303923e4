#ifndef SAHLKIT_PARALLEL_HPP
#define SAHLKIT_PARALLEL_HPP

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace sahl {

/// Runs fn(i) for i in [0, n) on a shared atomic counter. Results must be
/// aggregated by index by the caller to stay deterministic.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 0) {
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace sahl

#endif
