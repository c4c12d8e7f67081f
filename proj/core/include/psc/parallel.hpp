#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psc::detail {

// Evaluates fn(i) for every i in [0, chunks) on up to `jobs` threads and
// returns the results in index order. If several chunks throw, the exception
// of the lowest index is rethrown, so failures are as deterministic as results.
template <class Result, class Fn>
std::vector<Result> map_chunks(std::size_t chunks, unsigned jobs, Fn&& fn) {
  std::vector<Result> out(chunks);
  if (chunks == 0) return out;
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, chunks);
  if (workers == 1) {
    for (std::size_t i = 0; i < chunks; ++i) out[i] = fn(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = chunks;
  std::exception_ptr error;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= chunks) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace psc::detail
