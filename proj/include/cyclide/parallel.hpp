#ifndef CYCLIDE_PARALLEL_HPP
#define CYCLIDE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace cyclide {

/// Environment variable holding the worker count for grid sweeps.
inline constexpr const char* kWorkersEnv = "CYCLIDE_WORKERS";

inline unsigned worker_count() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// out[i] = fn(i) for i < n, evaluated on worker threads. Results keep index
/// order; the first exception thrown by any task is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn, unsigned workers = worker_count())
    -> std::vector<std::invoke_result_t<Fn, std::size_t>> {
  using Result = std::invoke_result_t<Fn, std::size_t>;
  std::vector<Result> out(n);
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace cyclide

#endif  // CYCLIDE_PARALLEL_HPP
