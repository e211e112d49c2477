#pragma once

#include <cstddef>
#include <functional>

namespace lulc::parallel {

/// Caps worker threads used by every parallel loop in the library (>= 1).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs fn(begin, end) over contiguous chunks of [0, n). Chunk boundaries depend
/// only on n and grain, never on the thread count, so per-chunk results merged
/// in chunk order are identical for any number of threads.
void for_chunks(std::size_t n, std::size_t grain,
                const std::function<void(std::size_t, std::size_t)>& fn);

/// Number of chunks for_chunks produces for (n, grain).
std::size_t chunk_count(std::size_t n, std::size_t grain);

}  // namespace lulc::parallel
