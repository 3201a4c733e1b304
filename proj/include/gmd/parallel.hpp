#pragma once

#include <cstddef>
#include <functional>

namespace gmd {

// Worker count from GMD_WORKERS, or the hardware concurrency when unset.
std::size_t worker_count();

// Runs body(i) for i in [0, count) over `workers` threads (0 means
// worker_count()). Indices are split into contiguous blocks; the first
// exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

}  // namespace gmd
