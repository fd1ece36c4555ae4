#include "fishschool/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fishschool {

int resolve_workers(int requested) {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  if (requested <= 0) return hw;
  return std::min(requested, 4 * hw);
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& task) {
  if (n == 0) return;
  const auto threads =
      static_cast<std::size_t>(std::max(1, workers)) < n
          ? static_cast<std::size_t>(std::max(1, workers))
          : n;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = n;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fishschool
