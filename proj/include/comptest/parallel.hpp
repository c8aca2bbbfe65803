// parallel.hpp
// Minimal deterministic work sharing: indices are assigned to workers by
// stride, each worker writes only its own slots, so results never depend on
// the thread count.

#pragma once

#include <functional>

namespace comptest {

// 0 requests hardware concurrency; the result is always >= 1.
int resolve_threads(int requested);

// Calls fn(i) for i in [0, n). Exceptions escaping fn are rethrown on the
// calling thread after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace comptest
