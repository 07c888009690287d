#pragma once

#include <cstddef>
#include <functional>

namespace qcs {

// Worker cap for grid and pixel sweeps.  0 means hardware concurrency.
void set_thread_cap(int n);
int thread_cap();

// Runs fn(begin, end) over fixed-size index blocks.  Blocks are assigned by
// block id, not by worker, and any reduction the caller performs must combine
// per-block results in block order; together that makes results independent
// of the worker count.
void parallel_for_blocks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace qcs
