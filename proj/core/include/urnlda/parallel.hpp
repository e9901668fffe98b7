#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace urnlda {

/// Runs fn(worker, begin, end) over `workers` contiguous chunks of [0, count).
/// Chunk 0 runs on the calling thread. The first exception thrown by any
/// chunk is rethrown after all chunks finish.
template <typename Fn>
void parallel_chunks(std::size_t workers, std::size_t count, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    fn(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  auto guarded = [&](std::size_t w, std::size_t b, std::size_t e) {
    try {
      fn(w, b, e);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
      threads.emplace_back(guarded, w, count * w / workers, count * (w + 1) / workers);
    }
    guarded(0, 0, count / workers);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace urnlda
