#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cscope {

/// Enumeration limits shared by every ball-style computation.
struct Budget {
  /// Maximum number of vertices a single enumeration may hold.
  std::size_t vertices = default_vertices();
  /// Worker threads for frontier expansion; results never depend on it.
  int threads = default_threads();

  /// COARSE_SCOPE_BUDGET, else 5'000'000.
  static std::size_t default_vertices();
  /// COARSE_SCOPE_THREADS, else the hardware concurrency.
  static int default_threads();
};

/// Runs body(begin, end) over contiguous chunks of [0, n).
template <class Body>
void parallel_chunks(std::size_t n, int threads, Body&& body) {
  const std::size_t workers = threads < 1 ? 1 : std::size_t(threads);
  if (workers == 1 || n < 256) {
    body(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cscope
