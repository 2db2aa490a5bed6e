// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The lsbc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LSBC_ESTIMATE_HPP
#define LSBC_ESTIMATE_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace lsbc {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  [[nodiscard]] double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n); 0 for n < 2
};

MeanEstimate summarize(std::span<const double> samples);

struct ThroughputEstimate {
  double mean = 0.0;                 // sum-rate / K, bits per channel use
  double std_error = 0.0;
  std::vector<double> per_user;      // mean rate of the i-th active user
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double max_leakage = 0.0;          // largest interference left uncancelled by the precoder
};

// Reduces per-trial results in trial order. per_user holds trials x s values,
// trial-major.
ThroughputEstimate collect_throughput(std::span<const double> totals, std::span<const double> per_user,
                                      std::size_t s, std::span<const double> leakage,
                                      std::uint64_t seed);

// Number of worker threads; 0 selects hardware concurrency.
unsigned resolve_threads(unsigned requested) noexcept;

/// Runs fn(i) for i in [0, n) on up to `threads` workers.
///
/// Indices are claimed from a shared counter; callers write results into
/// per-index slots so the reduction order is fixed. The first exception
/// thrown by any task is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(resolve_threads(threads), n == 0 ? 1 : n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lsbc

#endif  // LSBC_ESTIMATE_HPP
