#ifndef QWIELANDT_PARALLEL_HPP
#define QWIELANDT_PARALLEL_HPP

#include <atomic>
#include <thread>
#include <vector>

namespace qwl {

// Index-sharded parallel map with deterministic output: results land in
// slot i regardless of scheduling, so the merged output does not depend on
// the thread count. fn must not throw.
template <typename T, typename F>
std::vector<T> parallel_map(int count, int threads, F&& fn) {
  std::vector<T> results(count);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      results[i] = fn(i);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace qwl

#endif
