//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SRC_EVAL_PARALLEL_H_
#define MOLFP_SRC_EVAL_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace molfp::eval::detail {

// Calls body(i) for i in [0, count) on up to `jobs` threads. The first
// exception thrown by any call is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t count, std::size_t jobs, Body &&body) {
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next { 0 };
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (std::size_t j = 0; j < jobs; ++j)
    threads.emplace_back(worker);
  for (auto &t: threads)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
}

}  // namespace molfp::eval::detail

#endif  // MOLFP_SRC_EVAL_PARALLEL_H_
