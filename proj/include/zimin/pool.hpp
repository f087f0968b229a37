#pragma once

#include <cstddef>
#include <functional>

namespace zimin {

// Worker count: ZIMIN_THREADS if set, otherwise hardware concurrency.
unsigned default_threads();
void set_default_threads(unsigned n);

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = default).
// Exceptions from workers are rethrown on the calling thread (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace zimin
