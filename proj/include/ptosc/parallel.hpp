#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ptosc {

/// Worker cap: PTOSC_THREADS when set (clamped to >= 1), otherwise the
/// hardware concurrency.
inline int max_threads() {
  static const int cached = [] {
    if (const char* env = std::getenv("PTOSC_THREADS")) {
      const int v = std::atoi(env);
      if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

/// Runs fn(i) for i in [0, n). Each index must write only its own output
/// slot, so results are identical regardless of scheduling.
template <typename Fn>
void parallel_for(std::ptrdiff_t n, Fn&& fn) {
  const int workers = std::min<std::ptrdiff_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::ptrdiff_t> next{0};
  auto drain = [&] {
    for (;;) {
      const std::ptrdiff_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
}

}  // namespace ptosc
