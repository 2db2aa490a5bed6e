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

#include "lsbc/zfbf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsbc/quantization.hpp"

namespace lsbc {

ComplexMatrix zfbf_vectors(const ComplexMatrix& hhat_on) {
  const std::size_t K = hhat_on.rows();
  const std::size_t s = hhat_on.cols();
  const QrFactors f = qr_factor(hhat_on);
  // Hhat (Hhat^* Hhat)^-1 = Q_s R_s^{-*}
  ComplexMatrix beams(K, s);
  CVector unit(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::fill(unit.begin(), unit.end(), cplx{});
    unit[i] = 1.0;
    const CVector x = solve_upper_adjoint(f.r, unit);
    CVector w(K);
    for (std::size_t row = 0; row < K; ++row)
      for (std::size_t k = 0; k < s; ++k) w[row] += f.q(row, k) * x[k];
    const double len = norm(w);
    for (auto& z : w) z /= len;
    beams.set_column(i, w);
  }
  return beams;
}

ZfbfUserGains zfbf_user_gains(const ChannelRealization& channel, const ComplexMatrix& beams) {
  const std::size_t s = beams.cols();
  if (channel.h.rows() != beams.rows() || channel.h.cols() < s)
    throw std::invalid_argument("zfbf_user_gains: shape mismatch");
  ZfbfUserGains out{std::vector<double>(s), std::vector<double>(s)};
  for (std::size_t i = 0; i < s; ++i) {
    const CVector h = channel.h.column(i);
    for (std::size_t j = 0; j < s; ++j) {
      const double g = std::norm(inner(h, beams.column(j)));
      if (j == i)
        out.signal[i] = g;
      else
        out.interference[i] += g;
    }
  }
  return out;
}

std::vector<double> zfbf_rates(const ZfbfUserGains& gains, const SystemConfig& cfg) {
  const double ps = cfg.power_per_user();
  std::vector<double> rates(gains.signal.size());
  for (std::size_t i = 0; i < rates.size(); ++i)
    rates[i] = std::log2(1.0 + ps * gains.signal[i] / (1.0 + ps * gains.interference[i]));
  return rates;
}

ThroughputEstimate zfbf_throughput_mc(const SystemConfig& cfg, const MonteCarloOptions& options) {
  cfg.validate();
  if (options.n_outer == 0) throw std::invalid_argument("zfbf_throughput_mc: n_outer must be >= 1");
  const QubModel model = QubModel::from_config(cfg);
  model.validate();

  const std::size_t s = cfg.s;
  std::vector<double> totals(options.n_outer);
  std::vector<double> per_user(options.n_outer * s);
  std::vector<double> leakage(options.n_outer);

  parallel_for(options.n_outer, options.threads, [&](std::size_t t) {
    RngStream rng(options.seed, t);
    const ChannelRealization channel = sample_channel(cfg, rng);
    const QuantizedCsit csit = quantize_channel(channel, model, rng);
    const ComplexMatrix beams = zfbf_vectors(csit.hhat.leading_columns(s));
    const ZfbfUserGains gains = zfbf_user_gains(channel, beams);
    const std::vector<double> rates = zfbf_rates(gains, cfg);
    CompensatedSum sum;
    for (std::size_t i = 0; i < s; ++i) {
      per_user[t * s + i] = rates[i];
      sum.add(rates[i]);
    }
    totals[t] = sum.value() / static_cast<double>(cfg.K);
    leakage[t] = *std::max_element(gains.interference.begin(), gains.interference.end());
  });

  return collect_throughput(totals, per_user, s, leakage, options.seed);
}

}  // namespace lsbc
