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

#include "lsbc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace lsbc {

void SystemConfig::validate() const {
  if (K == 0) throw std::invalid_argument("SystemConfig: K must be >= 1");
  if (s == 0 || s > K) throw std::invalid_argument("SystemConfig: s must lie in [1, K]");
  if (!std::isfinite(P) || P < 0.0) throw std::invalid_argument("SystemConfig: P must be finite and >= 0");
  if (!(r >= 0.0)) throw std::invalid_argument("SystemConfig: r must be >= 0");
}

ChannelRealization sample_channel(const SystemConfig& cfg, RngStream& rng) {
  cfg.validate();
  ChannelRealization out{ComplexMatrix(cfg.K, cfg.K)};
  for (std::size_t i = 0; i < cfg.K; ++i) out.h.set_column(i, sample_complex_gaussian(cfg.K, rng));
  return out;
}

}  // namespace lsbc
