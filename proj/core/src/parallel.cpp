#include "gaborflow/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gaborflow {

int thread_count() {
  static int cached = [] {
    int n = (int)std::thread::hardware_concurrency();
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("GABORFLOW_THREADS")) {
      int cap = std::atoi(env);
      if (cap > 0) n = std::min(n, cap);
    }
    return n;
  }();
  return cached;
}

void parallel_for(int n, const std::function<void(int, int)>& work) {
  int workers = std::min(thread_count(), n);
  if (workers <= 1 || n <= 1) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int begin = w * chunk;
    int end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&work, begin, end] { work(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace gaborflow
