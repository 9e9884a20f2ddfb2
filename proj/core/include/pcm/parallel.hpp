#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pcm {

/// Resolves a worker count request; 0 means one per hardware thread.
inline unsigned resolve_workers(unsigned requested) noexcept {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into fixed chunks of `chunk` items and hands them out to
/// `workers` threads. `fn(chunk_index, begin, end, worker)` runs once per
/// chunk. Chunk boundaries depend only on `count` and `chunk`, never on the
/// worker count. The first exception thrown by any worker is rethrown after
/// all threads have joined.
template <class Fn>
void parallel_chunks(std::uint64_t count, std::uint64_t chunk, unsigned workers,
                     Fn&& fn) {
  if (count == 0) return;
  const std::uint64_t chunks = (count + chunk - 1) / chunk;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(resolve_workers(workers), chunks));

  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&](unsigned worker) {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) break;
      const std::uint64_t begin = c * chunk;
      const std::uint64_t end = std::min(count, begin + chunk);
      try {
        fn(c, begin, end, worker);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (workers <= 1) {
    body(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace pcm
