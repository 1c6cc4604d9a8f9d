#pragma once

#include <cstddef>
#include <functional>

namespace slag {

// Worker count: SLAG_THREADS if set (clamped to [1, 256]), else the hardware
// concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n) on a fixed chunk grid.  The chunk layout does
// not depend on the worker count, so reductions that combine per-chunk
// partials in index order produce byte-identical results at any SLAG_THREADS.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Chunked variant: body(chunk_index, begin, end).  chunk_index < n_chunks().
void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

std::size_t n_chunks();

}  // namespace slag
