#include "gcontour/util.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gc {

int worker_count() {
  int cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  if (const char* env = std::getenv("GC_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) cap = std::min(cap, requested);
  }
  return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  // Spawning threads costs more than it saves below this size.
  constexpr std::size_t kMinParallel = 1 << 16;
  const int workers = worker_count();
  if (workers == 1 || n < kMinParallel) {
    fn(0, n);
    return;
  }
  const std::size_t chunks = static_cast<std::size_t>(workers);
  const std::size_t step = (n + chunks - 1) / chunks;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t begin = 0; begin < n; begin += step) {
    const std::size_t end = std::min(n, begin + step);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace gc
