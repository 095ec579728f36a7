#pragma once

#include <functional>

namespace floodsim {

// Worker-count hint, read once from SIM_THREADS (clamped to [1,64], default 1).
int worker_count();
void set_worker_count(int n);

// Runs fn(row_begin, row_end) over disjoint chunks of [0, nrows). With one
// worker this is a direct call; results are identical for any worker count
// as long as fn writes only rows in its chunk.
void parallel_rows(int nrows, const std::function<void(int, int)>& fn);

} // namespace floodsim
