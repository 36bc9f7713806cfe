#include "wavekin/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace wavekin {

namespace {
int g_budget = 0;  // 0 = unset
int env_threads() {
  const char* e = std::getenv("WAVEKIN_THREADS");
  if (!e) return 0;
  int v = std::atoi(e);
  return v > 0 ? v : 0;
}
}  // namespace

void set_thread_budget(int n) { g_budget = n > 0 ? n : 0; }

int thread_budget() {
  int e = env_threads();
  if (e > 0) return e;
  if (g_budget > 0) return g_budget;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? (int)hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn) {
  int workers = thread_budget();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  if ((std::size_t)workers > n) workers = (int)n;
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i, t);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace wavekin
