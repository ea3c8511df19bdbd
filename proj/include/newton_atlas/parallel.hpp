#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace natlas {

inline int worker_count() {
  if (const char* env = std::getenv("NEWTON_ATLAS_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Static block partition of [0, count); each index is processed exactly once
// and results must be written to disjoint slots, so the output is identical
// for any worker count.
inline void parallel_for(int count, const std::function<void(int)>& fn,
                         int workers = worker_count()) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    int lo = static_cast<int>(static_cast<long long>(count) * w / workers);
    int hi = static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace natlas
