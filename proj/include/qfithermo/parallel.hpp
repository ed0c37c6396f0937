#pragma once

// Index-ordered parallel map and pairwise reduction. Results never depend on
// the thread count: every task writes its own slot and reductions always run
// over the slots in the same tree order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qfithermo {

/// Calls fn(i) for i in [0, n) on up to `threads` workers; results in index order.
/// threads == 0 means hardware concurrency.
template <typename Fn>
auto parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();  // joins
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Pairwise (tree) sum over [first, last). Works for scalars and Eigen objects.
template <typename T>
T pairwise_sum(const std::vector<T>& xs, std::size_t first, std::size_t last) {
  if (last - first == 1) return xs[first];
  const std::size_t mid = first + (last - first) / 2;
  T left = pairwise_sum(xs, first, mid);
  left += pairwise_sum(xs, mid, last);
  return left;
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

}  // namespace qfithermo
