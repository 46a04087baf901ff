#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pathfunc {

template <typename T>
std::vector<T> run_chunked(std::size_t n, std::size_t workers, std::size_t chunk_size,
                           const std::function<T(std::size_t, std::size_t)>& fn) {
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<T> results(n_chunks);
  if (n_chunks == 0) return results;
  if (workers == 0) workers = 1;
  workers = std::min(workers, n_chunks);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_chunk = n_chunks;

  auto work = [&] {
    for (;;) {
      if (abort.load(std::memory_order_relaxed)) return;
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      const std::size_t begin = c * chunk_size;
      const std::size_t end = std::min(n, begin + chunk_size);
      try {
        results[c] = fn(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        // Prefer the lowest failing chunk among those that ran.
        if (c < error_chunk) {
          error_chunk = c;
          error = std::current_exception();
        }
        abort.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace pathfunc
