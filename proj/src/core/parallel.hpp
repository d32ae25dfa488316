#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hrlab {

// Static work-stealing-free parallel loop; body(i) must be independent across i.
inline void parallel_for(int n, const std::function<void(int)>& body, int max_threads = 0) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 2;
  int nt = max_threads > 0 ? std::min(max_threads, hw) : hw;
  nt = std::min(nt, n);
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace hrlab
