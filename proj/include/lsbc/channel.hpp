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

#ifndef LSBC_CHANNEL_HPP
#define LSBC_CHANNEL_HPP

#include <cstddef>

#include "lsbc/numerics.hpp"
#include "lsbc/rng.hpp"

namespace lsbc {

/// K-antenna, K-user Gaussian broadcast channel under the on-off policy.
///
/// Noise is unit variance, so the total power P is the SNR. The active set
/// is users 0..s-1, each served with power P/s. Feedback is r bits per user;
/// r need not be an integer (r = rbar * K in sweeps). With perfect_csit the
/// feedback is treated as unquantized and r is ignored.
struct SystemConfig {
  std::size_t K = 1;
  double P = 0.0;
  std::size_t s = 1;
  double r = 0.0;
  bool perfect_csit = false;

  // Throws std::invalid_argument on K = 0, s outside [1, K], P < 0, r < 0,
  // or non-finite P.
  void validate() const;
  [[nodiscard]] double power_per_user() const noexcept { return P / static_cast<double>(s); }
};

// Column i of h is the channel vector of user i.
struct ChannelRealization {
  ComplexMatrix h;
};

ChannelRealization sample_channel(const SystemConfig& cfg, RngStream& rng);

}  // namespace lsbc

#endif  // LSBC_CHANNEL_HPP
