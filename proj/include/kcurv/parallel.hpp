#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace kcurv {

// Worker count for embarrassingly parallel batches, from KCURV_WORKERS
// (default 1). Results must not depend on the partitioning; callers combine
// per-chunk results with order-independent reductions.
inline int worker_count() {
  const char* env = std::getenv("KCURV_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  if (n < 1) return 1;
  return n > 64 ? 64 : n;
}

// Runs fn(begin, end) over a fixed partition of [0, total) into contiguous
// chunks, one per worker.
inline void parallel_chunks(long total,
                            const std::function<void(long, long)>& fn) {
  const int workers = worker_count();
  if (workers <= 1 || total < 2 * workers) {
    fn(0, total);
    return;
  }
  std::vector<std::thread> pool;
  const long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace kcurv
