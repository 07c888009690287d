#include "qcs/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace qcs {

namespace {
int g_thread_cap = 0;
constexpr std::size_t kBlock = 4096;
}  // namespace

void set_thread_cap(int n) { g_thread_cap = n < 0 ? 0 : n; }

int thread_cap() {
  if (g_thread_cap > 0) return g_thread_cap;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  const int workers = std::min<std::size_t>(thread_cap(), nblocks);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        std::size_t lo = b * kBlock;
        std::size_t hi = std::min(lo + kBlock, n);
        fn(lo, hi);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qcs
