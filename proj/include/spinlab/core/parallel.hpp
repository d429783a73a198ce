#pragma once

#include <cstddef>
#include <functional>

namespace spinlab {

// Worker count from SPINLAB_THREADS, else the hardware concurrency.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Results must be written by index so the
// outcome does not depend on scheduling. The first exception is rethrown.
// max_workers = 0 means no cap beyond worker_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t max_workers = 0);

// Cap on concurrent tasks that each hold `bytes_per_task` of dense matrices.
std::size_t memory_bounded_workers(std::size_t bytes_per_task);

}  // namespace spinlab
