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

#include "lsbc/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace lsbc {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    carry_ += (sum_ - t) + x;
  else
    carry_ += (x - t) + sum_;
  sum_ = t;
}

MeanEstimate summarize(std::span<const double> samples) {
  MeanEstimate out;
  const std::size_t n = samples.size();
  if (n == 0) return out;
  CompensatedSum total;
  for (double x : samples) total.add(x);
  out.mean = total.value() / static_cast<double>(n);
  if (n < 2) return out;
  CompensatedSum sq;
  for (double x : samples) sq.add((x - out.mean) * (x - out.mean));
  const double variance = sq.value() / static_cast<double>(n - 1);
  out.std_error = std::sqrt(variance / static_cast<double>(n));
  return out;
}

ThroughputEstimate collect_throughput(std::span<const double> totals, std::span<const double> per_user,
                                      std::size_t s, std::span<const double> leakage,
                                      std::uint64_t seed) {
  const std::size_t trials = totals.size();
  ThroughputEstimate out;
  const MeanEstimate m = summarize(totals);
  out.mean = m.mean;
  out.std_error = m.std_error;
  out.trials = trials;
  out.seed = seed;
  out.per_user.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    CompensatedSum col;
    for (std::size_t t = 0; t < trials; ++t) col.add(per_user[t * s + i]);
    out.per_user[i] = trials > 0 ? col.value() / static_cast<double>(trials) : 0.0;
  }
  for (double x : leakage) out.max_leakage = std::max(out.max_leakage, x);
  return out;
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace lsbc
