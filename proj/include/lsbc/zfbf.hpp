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

#ifndef LSBC_ZFBF_HPP
#define LSBC_ZFBF_HPP

#include <vector>

#include "lsbc/channel.hpp"
#include "lsbc/estimate.hpp"
#include "lsbc/numerics.hpp"
#include "lsbc/zfdpc.hpp"

namespace lsbc {

// Zeroforcing beamforming on the quantized directions: column i of the result
// is the normalized i-th column of Hhat (Hhat^* Hhat)^-1, so that
// hhat_j^* w_i = 0 for every j != i. Throws SingularMatrixError on rank loss.
ComplexMatrix zfbf_vectors(const ComplexMatrix& hhat_on);

struct ZfbfUserGains {
  std::vector<double> signal;        // |h_i^* w_i|^2
  std::vector<double> interference;  // sum_{j != i} |h_i^* w_j|^2
};

ZfbfUserGains zfbf_user_gains(const ChannelRealization& channel, const ComplexMatrix& beams);

// Per-user rates log2(1 + (P/s) signal / (1 + (P/s) interference)).
std::vector<double> zfbf_rates(const ZfbfUserGains& gains, const SystemConfig& cfg);

/// Finite-K ZFBF throughput (sum-rate / K). Uses the same per-trial streams
/// as throughput_mc, so both schemes see identical channels and
/// quantization for a given seed. options.n_inner is ignored.
ThroughputEstimate zfbf_throughput_mc(const SystemConfig& cfg, const MonteCarloOptions& options);

}  // namespace lsbc

#endif  // LSBC_ZFBF_HPP
