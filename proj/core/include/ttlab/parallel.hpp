#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace ttlab {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n) on a worker pool and collects results by index,
// so the output is independent of the worker count and scheduling order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int workers, Fn&& fn) {
  std::vector<T> out(n);
  workers = resolve_workers(workers);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<std::size_t>(workers, n));
  pool.reserve(spawn);
  for (int w = 0; w < spawn; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace ttlab
