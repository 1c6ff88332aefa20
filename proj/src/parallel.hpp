#ifndef CTBN_SRC_PARALLEL_HPP
#define CTBN_SRC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ctbn::detail {

/* Runs fn(0..count-1) across up to `jobs` worker threads.  Tasks must be
 * independent; the assignment of tasks to threads is unspecified, so any
 * determinism has to come from indexing results by task. */
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::min(std::max(jobs, 1), count);
  if (jobs <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ctbn::detail

#endif
