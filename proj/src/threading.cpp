#include "floodsim/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace floodsim {

namespace {

int clamp_workers(int n) { return std::clamp(n, 1, 64); }

int initial_worker_count() {
  if (const char* env = std::getenv("SIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return clamp_workers(n);
  }
  return 1;
}

int& worker_count_slot() {
  static int n = initial_worker_count();
  return n;
}

} // namespace

int worker_count() { return worker_count_slot(); }

void set_worker_count(int n) { worker_count_slot() = clamp_workers(n); }

void parallel_rows(int nrows, const std::function<void(int, int)>& fn) {
  const int workers = std::min(worker_count(), nrows > 0 ? nrows : 1);
  if (workers <= 1 || nrows <= 1) {
    fn(0, nrows);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (nrows + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(nrows, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& th : pool) th.join();
}

} // namespace floodsim
