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

#include "lsbc/zfdpc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lsbc {
namespace {

void check_user(const BeamformingPlan& plan, std::size_t user) {
  if (user >= plan.s) throw std::invalid_argument("user index outside the active set");
}

// D K/(K-1), the spread of the quantization error over the complement of
// hhat. K = 1 only occurs with perfect feedback, where D = 0.
double spread_term(double D, std::size_t K) {
  return K > 1 ? D * static_cast<double>(K) / static_cast<double>(K - 1) : 0.0;
}

// 1 - D - D/(K-1): weight of hhat hhat^* in the conditional outer product.
double aligned_weight(double D, std::size_t K) {
  return K > 1 ? 1.0 - D - D / static_cast<double>(K - 1) : 1.0 - D;
}

void check_plan_config(const BeamformingPlan& plan, const SystemConfig& cfg) {
  cfg.validate();
  if (plan.K() != cfg.K || plan.s != cfg.s)
    throw std::invalid_argument("beamforming plan does not match the system configuration");
}

}  // namespace

BeamformingPlan make_beamforming_plan(const QuantizedCsit& csit, std::size_t s) {
  const std::size_t K = csit.hhat.rows();
  if (s == 0 || s > K) throw std::invalid_argument("make_beamforming_plan: s must lie in [1, K]");
  QrFactors f = qr_factor(csit.hhat.leading_columns(s));
  return {std::move(f.q), std::move(f.r), s};
}

ComplexMatrix conditional_outer_product(std::span<const cplx> hhat, double D) {
  const std::size_t K = hhat.size();
  if (K < 2) throw std::invalid_argument("conditional_outer_product: K must be >= 2");
  if (!(D >= 0.0 && D <= 1.0)) throw std::invalid_argument("conditional_outer_product: D must lie in [0, 1]");
  const double a = aligned_weight(D, K);
  const double b = D / static_cast<double>(K - 1);
  ComplexMatrix out(K, K);
  for (std::size_t r = 0; r < K; ++r) {
    for (std::size_t c = 0; c < K; ++c) out(r, c) = a * hhat[r] * std::conj(hhat[c]);
    out(r, r) += b;
  }
  return out;
}

ConditionalMoments build_moments(const BeamformingPlan& plan, const SystemConfig& cfg, double D,
                                 std::size_t user) {
  check_plan_config(plan, cfg);
  check_user(plan, user);
  const double K = static_cast<double>(cfg.K);
  const double s = static_cast<double>(cfg.s);
  const double P = cfg.P;

  ConditionalMoments out;
  out.D = D;
  const double spread = spread_term(D, cfg.K);
  out.nr_bar = 1.0 + P * K / s * (1.0 - D) + P * spread * (s - 1.0) / s;
  out.m = ComplexMatrix(user, user);
  const double shift = out.nr_bar - P * spread / s;
  const double rank_one = P * K / s * aligned_weight(D, cfg.K);
  // l_j = omega_j^* hhat_user, so (l l^*)_{jk} = l_j conj(l_k).
  for (std::size_t j = 0; j < user; ++j) {
    const cplx lj = plan.r(j, user);
    for (std::size_t k = 0; k < user; ++k) out.m(j, k) = -rank_one * lj * std::conj(plan.r(k, user));
    out.m(j, j) += shift;
  }
  return out;
}

InflationFactor inflation_generic(const ConditionalMoments& moments, const BeamformingPlan& plan,
                                  const QuantizedCsit& csit, const SystemConfig& cfg,
                                  std::size_t user) {
  check_plan_config(plan, cfg);
  check_user(plan, user);
  if (moments.m.rows() != user) throw std::invalid_argument("inflation_generic: moments built for another user");

  InflationFactor out;
  const CVector hhat = csit.hhat.column(user);
  const CVector omega_i = plan.omega(user);
  out.omega_dot_hhat = inner(omega_i, hhat);
  out.l_conj.resize(user);
  for (std::size_t j = 0; j < user; ++j) out.l_conj[j] = inner(hhat, plan.omega(j));
  if (user == 0) return out;

  // E[h h^*] = K E[h~ h~^*] because ||h||^2 is independent of h~ with mean K.
  const ComplexMatrix cov = conditional_outer_product(hhat, moments.D);
  const double scale = cfg.power_per_user() * static_cast<double>(cfg.K);
  CVector cov_omega_i(cfg.K);
  for (std::size_t r = 0; r < cfg.K; ++r) {
    cplx acc{};
    for (std::size_t c = 0; c < cfg.K; ++c) acc += std::conj(cov(c, r)) * omega_i[c];
    cov_omega_i[r] = acc;  // (cov^* omega_i), so omega_i^* cov omega_j = inner(cov_omega_i, omega_j)
  }
  // numerator row n_j = scale * omega_i^* cov omega_j; W M = n  <=>  M W^* = n^*.
  CVector rhs(user);
  for (std::size_t j = 0; j < user; ++j) rhs[j] = std::conj(scale * inner(cov_omega_i, plan.omega(j)));
  const CVector w_adj = solve_hermitian_pd(moments.m, rhs);
  out.w.resize(user);
  for (std::size_t j = 0; j < user; ++j) out.w[j] = std::conj(w_adj[j]);

  // Recover c from W = (omega^* hhat) c l^* along the largest entry of l.
  std::size_t pivot = 0;
  for (std::size_t j = 1; j < user; ++j)
    if (std::abs(out.l_conj[j]) > std::abs(out.l_conj[pivot])) pivot = j;
  const cplx denom = out.omega_dot_hhat * out.l_conj[pivot];
  out.c = std::abs(denom) > 0.0 ? (out.w[pivot] / denom).real() : 0.0;
  return out;
}

InflationFactor inflation_closed_form(const BeamformingPlan& plan, const SystemConfig& cfg,
                                      std::size_t user, double D, InflationDenominator form) {
  check_plan_config(plan, cfg);
  check_user(plan, user);
  const double K = static_cast<double>(cfg.K);
  const double s = static_cast<double>(cfg.s);
  const double P = cfg.P;

  InflationFactor out;
  out.omega_dot_hhat = plan.r(user, user);
  out.l_conj.resize(user);
  for (std::size_t j = 0; j < user; ++j) out.l_conj[j] = plan.hhat_dot_omega(user, j);

  const double gain = P * K / s * aligned_weight(D, cfg.K);
  const double share = (form == InflationDenominator::kExact) ? (s - 1.0) / s : 1.0;
  const double denom = 1.0 + gain * std::norm(out.omega_dot_hhat) + P * spread_term(D, cfg.K) * share;
  out.c = gain / denom;
  out.w.resize(user);
  for (std::size_t j = 0; j < user; ++j) out.w[j] = out.omega_dot_hhat * out.c * out.l_conj[j];
  return out;
}

double rate_user(const BeamformingPlan& plan, const SystemConfig& cfg, const QubModel& model,
                 std::size_t user, const InflationFactor& inflation, std::size_t n_inner,
                 RngStream& rng) {
  cfg.validate();
  check_user(plan, user);
  if (n_inner == 0) throw std::invalid_argument("rate_user: n_inner must be >= 1");
  if (inflation.w.size() != user) throw std::invalid_argument("rate_user: inflation factor has wrong length");
  if (plan.K() != model.K) throw std::invalid_argument("rate_user: model dimension mismatch");

  const std::size_t K = plan.K();
  const std::size_t s = plan.s;
  const double ps = cfg.power_per_user();
  const double inflation_gain = 1.0 + inflation.norm_sq();

  // Work in the basis of Q: coordinate j of a vector x is omega_j^* x, and
  // the coordinates of hhat_user are column `user` of R.
  CVector hhat(K);
  for (std::size_t j = 0; j <= user; ++j) hhat[j] = plan.r(j, user);
  CVector h(K);

  CompensatedSum acc;
  for (std::size_t n = 0; n < n_inner; ++n) {
    sample_conditional_channel(hhat, model, rng, h);
    // h^* omega_j = conj(h_j)
    double power = 0.0;
    for (std::size_t j = 0; j < s; ++j) power += std::norm(h[j]);
    const double nr = 1.0 + ps * power;
    cplx signal = std::conj(h[user]);
    for (std::size_t j = 0; j < user; ++j) signal += std::conj(h[j]) * std::conj(inflation.w[j]);
    const double denom = nr * inflation_gain - ps * std::norm(signal);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
      std::ostringstream msg;
      msg << "rate_user: non-positive log argument for user " << user << " (nr = " << nr
          << ", 1+|W|^2 = " << inflation_gain << ", signal = " << ps * std::norm(signal) << ")";
      throw NumericDomainError(msg.str());
    }
    acc.add(std::log2(nr / denom));
  }
  return acc.value() / static_cast<double>(n_inner);
}

ThroughputEstimate throughput_mc(const SystemConfig& cfg, const MonteCarloOptions& options) {
  cfg.validate();
  if (options.n_outer == 0 || options.n_inner == 0)
    throw std::invalid_argument("throughput_mc: trial counts must be >= 1");
  const QubModel model = QubModel::from_config(cfg);
  model.validate();
  const double D = expected_distortion(model);

  const std::size_t s = cfg.s;
  std::vector<double> totals(options.n_outer);
  std::vector<double> per_user(options.n_outer * s);
  std::vector<double> leakage(options.n_outer);

  parallel_for(options.n_outer, options.threads, [&](std::size_t t) {
    RngStream rng(options.seed, t);
    const ChannelRealization channel = sample_channel(cfg, rng);
    const QuantizedCsit csit = quantize_channel(channel, model, rng);
    const BeamformingPlan plan = make_beamforming_plan(csit, s);

    CompensatedSum sum;
    double worst = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const InflationFactor w = inflation_closed_form(plan, cfg, i, D, options.form);
      const double rate = rate_user(plan, cfg, model, i, w, options.n_inner, rng);
      per_user[t * s + i] = rate;
      sum.add(rate);

      // Interference from later users, zeroforced only on the quantized directions.
      const CVector h = channel.h.column(i);
      double later = 0.0;
      for (std::size_t k = i + 1; k < s; ++k) later += std::norm(inner(h, plan.q.column(k)));
      worst = std::max(worst, later);
    }
    totals[t] = sum.value() / static_cast<double>(cfg.K);
    leakage[t] = worst;
  });

  return collect_throughput(totals, per_user, s, leakage, options.seed);
}

RealizedUserTerms realized_user_terms(const ChannelRealization& channel, const BeamformingPlan& plan,
                                      const SystemConfig& cfg, const InflationFactor& inflation,
                                      std::size_t user) {
  cfg.validate();
  check_user(plan, user);
  const std::size_t s = plan.s;
  const double inv_s = 1.0 / static_cast<double>(s);
  const double ps = cfg.power_per_user();
  const CVector h = channel.h.column(user);

  std::vector<cplx> y(s);  // h^* omega_j
  for (std::size_t j = 0; j < s; ++j) y[j] = inner(h, plan.q.column(j));

  RealizedUserTerms out;
  out.hhat_gain = std::norm(plan.r(user, user));
  double prior = 0.0, later = 0.0, total = 0.0;
  for (std::size_t j = 0; j < s; ++j) {
    const double g = std::norm(y[j]);
    total += g;
    if (j < user) prior += g;
    if (j > user) later += g;
  }
  out.prior_interference = inv_s * prior;
  out.later_interference = inv_s * later;
  out.nr = 1.0 + ps * total;
  out.inflation_norm = 1.0 + inflation.norm_sq();
  cplx signal = y[user];
  for (std::size_t j = 0; j < user; ++j) signal += y[j] * std::conj(inflation.w[j]);
  out.useful_signal = inv_s * std::norm(signal);
  out.projected_gain = squared_norm(h) * out.hhat_gain;
  return out;
}

}  // namespace lsbc
