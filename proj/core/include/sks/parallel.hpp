#pragma once

#include <cstddef>
#include <functional>

namespace sks {

// Worker count: hardware concurrency, capped by the THREADS environment variable.
unsigned worker_count();

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend
// only on n and chunk, never on the worker count, so per-chunk results are reproducible.
void parallel_chunks(std::size_t n, std::size_t chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace sks
