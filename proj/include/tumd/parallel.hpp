#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tumd {

// Requested worker count. threads == 0 means "use hardware concurrency".
struct Parallelism {
  std::size_t threads = 0;

  std::size_t resolve() const {
    if (threads > 0) return threads;
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

// Runs fn(task, worker) for task in [0, count). Tasks are handed out
// dynamically; callers must write results to task-indexed slots (or
// worker-indexed scratch) so output never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Parallelism par, Fn&& fn) {
  const std::size_t workers = std::min(par.resolve(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i, std::size_t{0});
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto body = [&](std::size_t worker) {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i, worker);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Number of workers parallel_for will use for `count` tasks.
inline std::size_t worker_count(std::size_t count, Parallelism par) {
  return std::min(par.resolve(), std::max<std::size_t>(count, 1));
}

}  // namespace tumd
