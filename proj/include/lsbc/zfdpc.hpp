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

#ifndef LSBC_ZFDPC_HPP
#define LSBC_ZFDPC_HPP

#include <cstddef>
#include <cstdint>
#include <span>

#include "lsbc/channel.hpp"
#include "lsbc/estimate.hpp"
#include "lsbc/numerics.hpp"
#include "lsbc/quantization.hpp"
#include "lsbc/rng.hpp"

namespace lsbc {

// Zeroforcing dirty-paper coding with beamformers from the QR factorization
// of the quantized channel of the active users. User indices are 0-based and
// follow the encoding order.

struct BeamformingPlan {
  ComplexMatrix q;  // K x K unitary; columns 0..s-1 are the beamformers
  ComplexMatrix r;  // K x s, upper triangular: r(j, i) = omega_j^* hhat_i
  std::size_t s = 0;

  [[nodiscard]] std::size_t K() const noexcept { return q.rows(); }
  [[nodiscard]] CVector omega(std::size_t j) const { return q.column(j); }
  // hhat_i^* omega_j
  [[nodiscard]] cplx hhat_dot_omega(std::size_t i, std::size_t j) const { return std::conj(r(j, i)); }
};

BeamformingPlan make_beamforming_plan(const QuantizedCsit& csit, std::size_t s);

/// E[h~ h~^* | hhat] = (1 - D - D/(K-1)) hhat hhat^* + D/(K-1) I_K.
ComplexMatrix conditional_outer_product(std::span<const cplx> hhat, double D);

struct ConditionalMoments {
  double D = 0.0;
  double nr_bar = 0.0;  // E[nr | Hhat]
  ComplexMatrix m;      // user x user
};

/// Closed-form conditional moments for `user`:
///   nr_bar = 1 + (PK/s)(1-D) + PD K/(K-1) (s-1)/s
///   M      = (nr_bar - PDK/(s(K-1))) I - (PK/s)(1 - D - D/(K-1)) l l^*
/// with l^* = hhat_user^* [omega_0 ... omega_{user-1}].
ConditionalMoments build_moments(const BeamformingPlan& plan, const SystemConfig& cfg, double D,
                                 std::size_t user);

struct InflationFactor {
  CVector w;       // row vector of length `user`
  CVector l_conj;  // hhat_user^* omega_j, j < user
  double c = 0.0;  // W^* = (hhat^* omega_user) c l
  cplx omega_dot_hhat{};

  [[nodiscard]] double norm_sq() const { return squared_norm(w); }
};

// Solves W M = (P/s) E[omega_user^* h h^* Omega | Hhat] with the numerator
// assembled from the conditional outer product. Throws NumericDomainError
// when M is ill-conditioned.
InflationFactor inflation_generic(const ConditionalMoments& moments, const BeamformingPlan& plan,
                                  const QuantizedCsit& csit, const SystemConfig& cfg,
                                  std::size_t user);

// Which scalar multiplies PDK/(K-1) in the closed-form denominator.
enum class InflationDenominator {
  kExact,      // (s-1)/s: the eigenvalue of M along l, identical to the generic solve
  kAsPrinted,  // 1: the large-s simplification; differs from the generic solve by O(1/s)
};

InflationFactor inflation_closed_form(const BeamformingPlan& plan, const SystemConfig& cfg,
                                      std::size_t user, double D,
                                      InflationDenominator form = InflationDenominator::kExact);

/// Conditional rate of `user` given the quantized channel, in bits:
///   E log2 nr / (nr (1 + |W|^2) - (P/s) |h^*(omega_user + Omega W^*)|^2)
/// averaged over n_inner conditional channel draws. Throws NumericDomainError
/// if a log argument is non-positive.
double rate_user(const BeamformingPlan& plan, const SystemConfig& cfg, const QubModel& model,
                 std::size_t user, const InflationFactor& inflation, std::size_t n_inner,
                 RngStream& rng);

struct MonteCarloOptions {
  std::size_t n_outer = 500;
  std::size_t n_inner = 200;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: hardware concurrency
  InflationDenominator form = InflationDenominator::kExact;
};

/// Finite-K throughput (sum-rate / K) of ZFDPC, averaged over n_outer
/// independent channel and quantization draws. Trial t uses RngStream(seed, t),
/// so the result is bit-identical for any thread count.
ThroughputEstimate throughput_mc(const SystemConfig& cfg, const MonteCarloOptions& options);

// Per-user terms on a realized channel, the quantities whose large-K limits
// make up the asymptotic throughput.
struct RealizedUserTerms {
  double hhat_gain = 0.0;           // |hhat_i^* omega_i|^2
  double prior_interference = 0.0;  // (1/s) sum_{j<i} |h_i^* omega_j|^2
  double later_interference = 0.0;  // (1/s) sum_{i<k<s} |h_i^* omega_k|^2
  double nr = 0.0;                  // 1 + (P/s) sum_{j<s} |h_i^* omega_j|^2
  double inflation_norm = 0.0;      // 1 + |W_i|^2
  double useful_signal = 0.0;       // (1/s) |h_i^*(omega_i + Omega W_i^*)|^2
  double projected_gain = 0.0;      // ||h_i||^2 |hhat_i^* omega_i|^2
};

RealizedUserTerms realized_user_terms(const ChannelRealization& channel, const BeamformingPlan& plan,
                                      const SystemConfig& cfg, const InflationFactor& inflation,
                                      std::size_t user);

}  // namespace lsbc

#endif  // LSBC_ZFDPC_HPP
