#pragma once

#include <omp.h>

#include <cstddef>
#include <exception>
#include <mutex>

namespace stargraph {

inline int resolve_threads(int threads) noexcept {
  return threads > 0 ? threads : omp_get_max_threads();
}

/// Runs fn(i) for i in [0, n) on an OpenMP team. The first exception thrown
/// by any iteration is rethrown on the calling thread after the loop ends.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64) num_threads(resolve_threads(threads))
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace stargraph
