// Copyright 2026 The Forgeline Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FORGELINE_CONCURRENCY_H_
#define FORGELINE_CONCURRENCY_H_

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace forgeline {

// Runs fn(i) for i in [0, n) on up to `max_workers` threads. Results must be
// written to per-index slots by the caller so output order never depends on
// scheduling. The first exception thrown is rethrown after all workers join.
inline void ParallelFor(size_t n, size_t max_workers,
                        const std::function<void(size_t)>& fn) {
  const size_t workers = std::min(n, std::max<size_t>(1, max_workers));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// Counting limiter for in-flight requests.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(int limit) : available_(std::max(1, limit)) {}

  void Acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }
  void Release() {
    {
      std::lock_guard lock(mu_);
      ++available_;
    }
    cv_.notify_one();
  }

  class Slot {
   public:
    explicit Slot(InFlightLimiter& l) : l_(l) { l_.Acquire(); }
    ~Slot() { l_.Release(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;

   private:
    InFlightLimiter& l_;
  };

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int available_;
};

}  // namespace forgeline

#endif  // FORGELINE_CONCURRENCY_H_
