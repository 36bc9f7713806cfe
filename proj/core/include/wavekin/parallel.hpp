#pragma once

#include <cstddef>
#include <functional>

namespace wavekin {

// Process-wide thread budget: config value, overridable by the
// WAVEKIN_THREADS environment variable; defaults to available parallelism.
void set_thread_budget(int n);
int thread_budget();

// Runs fn(i, tid) for i in [0, n) on up to thread_budget() workers.
// tid in [0, n_workers). Callers must write results into per-index slots and
// reduce in index order afterwards; that makes results independent of the
// schedule and of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, int)>& fn);

}  // namespace wavekin
