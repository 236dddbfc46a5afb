#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace haarmoments {

// Monte Carlo work is split into fixed-size chunks; chunk c draws from its own
// substream and partial results are reduced in chunk order, so estimates do
// not depend on the number of workers.
inline constexpr std::size_t kChunkSize = 1024;

// HAARMOMENTS_THREADS, unless overridden with set_worker_count. Falls back to
// the hardware concurrency.
int worker_count();

// n > 0 overrides the environment; n == 0 clears the override.
void set_worker_count(int n);

class ScopedWorkerCount {
 public:
  explicit ScopedWorkerCount(int n);
  ~ScopedWorkerCount();
  ScopedWorkerCount(const ScopedWorkerCount&) = delete;
  ScopedWorkerCount& operator=(const ScopedWorkerCount&) = delete;

 private:
  int previous_;
};

namespace detail {
int worker_override();
}

// Calls body(chunk, begin, end) for every chunk of [0, n) and returns the
// per-chunk results indexed by chunk.
template <class Result, class Body>
std::vector<Result> run_chunks(std::size_t n, Body&& body) {
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<Result> results(chunks);
  if (chunks == 0) return results;

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t begin = c * kChunkSize;
      const std::size_t end = begin + kChunkSize < n ? begin + kChunkSize : n;
      try {
        results[c] = body(c, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), chunks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace haarmoments
