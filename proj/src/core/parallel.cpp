#include "spinlab/core/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace spinlab {

std::size_t worker_count() {
  if (const char* env = std::getenv("SPINLAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t memory_bounded_workers(std::size_t bytes_per_task) {
  constexpr std::size_t kBudget = std::size_t{2} << 30;
  return std::max<std::size_t>(1, kBudget / std::max<std::size_t>(1, bytes_per_task));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t max_workers) {
  std::size_t workers = std::min(worker_count(), n);
  if (max_workers > 0) workers = std::min(workers, max_workers);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace spinlab
