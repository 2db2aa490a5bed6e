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

#include "lsbc/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lsbc {

void QubModel::validate() const {
  if (K == 0) throw std::invalid_argument("QubModel: K must be >= 1");
  if (!perfect && K < 2)
    throw std::invalid_argument("QubModel: K = 1 has no perpendicular space for the quantization error");
  if (!(r >= 0.0)) throw std::invalid_argument("QubModel: r must be >= 0");
}

double QubModel::delta() const noexcept {
  if (perfect) return 0.0;
  return std::exp2(-r / static_cast<double>(K - 1));
}

double draw_distortion(const QubModel& model, RngStream& rng) {
  if (model.perfect) return 0.0;
  const double u = rng.uniform();
  return model.delta() * std::pow(u, 1.0 / static_cast<double>(model.K - 1));
}

CVector isotropic_orthogonal(std::span<const cplx> u, RngStream& rng) {
  if (u.size() < 2) throw std::invalid_argument("isotropic_orthogonal: dimension must be >= 2");
  CVector g = sample_complex_gaussian(u.size(), rng);
  const cplx along = inner(u, g);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] -= u[k] * along;
  const double len = norm(g);
  for (auto& z : g) z /= len;
  return g;
}

QuantizedCsit quantize_channel(const ChannelRealization& channel, const QubModel& model,
                               RngStream& rng) {
  model.validate();
  const std::size_t K = channel.h.rows();
  if (K != model.K || channel.h.cols() != K)
    throw std::invalid_argument("quantize_channel: channel shape does not match the model");

  QuantizedCsit out{ComplexMatrix(K, K), std::vector<double>(K), std::vector<CVector>(K),
                    std::vector<double>(K)};
  for (std::size_t i = 0; i < K; ++i) {
    CVector dir = channel.h.column(i);
    const double n2 = squared_norm(dir);
    const double len = std::sqrt(n2);
    for (auto& z : dir) z /= len;

    const double d2 = draw_distortion(model, rng);
    CVector hhat(K);
    CVector edir(K);
    if (K >= 2) {
      const CVector v = isotropic_orthogonal(dir, rng);
      const double a = std::sqrt(1.0 - d2);
      const double b = std::sqrt(d2);
      for (std::size_t k = 0; k < K; ++k) {
        hhat[k] = a * dir[k] + b * v[k];
        edir[k] = b * dir[k] - a * v[k];
      }
    } else {
      hhat = dir;
    }
    out.hhat.set_column(i, hhat);
    out.dc2[i] = d2;
    out.edir[i] = std::move(edir);
    out.channel_norms[i] = n2;
  }
  return out;
}

CodewordMatch quantize_explicit(std::span<const cplx> h, std::span<const CVector> codebook) {
  if (codebook.empty()) throw std::invalid_argument("quantize_explicit: empty codebook");
  const double n2 = squared_norm(h);
  if (!(n2 > 0.0)) throw std::invalid_argument("quantize_explicit: zero channel vector");
  CodewordMatch best{0, 2.0};
  for (std::size_t j = 0; j < codebook.size(); ++j) {
    if (codebook[j].size() != h.size())
      throw std::invalid_argument("quantize_explicit: codeword dimension mismatch");
    const double d2 = std::max(0.0, 1.0 - std::norm(inner(h, codebook[j])) / n2);
    if (d2 < best.d2) best = {j, d2};
  }
  return best;
}

std::vector<CVector> random_codebook(std::size_t K, std::size_t size, RngStream& rng) {
  std::vector<CVector> book(size);
  for (auto& q : book) {
    q = sample_complex_gaussian(K, rng);
    const double len = norm(q);
    for (auto& z : q) z /= len;
  }
  return book;
}

double expected_distortion(const QubModel& model) {
  model.validate();
  if (model.perfect) return 0.0;
  const double k = static_cast<double>(model.K);
  return (k - 1.0) / k * model.delta();
}

void sample_conditional_channel(std::span<const cplx> hhat, const QubModel& model, RngStream& rng,
                                std::span<cplx> out) {
  const std::size_t K = hhat.size();
  if (out.size() != K) throw std::invalid_argument("sample_conditional_channel: output size mismatch");
  // The Gaussian draw supplies both the chi^2_{2K} norm and, after projection,
  // the isotropic error direction; the two are independent.
  for (std::size_t k = 0; k < K; ++k) out[k] = rng.complex_normal();
  const double len = norm(out);
  const double d2 = draw_distortion(model, rng);
  if (d2 == 0.0) {
    for (std::size_t k = 0; k < K; ++k) out[k] = len * hhat[k];
    return;
  }
  const cplx along = inner(hhat, out);
  for (std::size_t k = 0; k < K; ++k) out[k] -= hhat[k] * along;
  const double perp = norm(out);
  const double a = len * std::sqrt(1.0 - d2);
  const double b = len * std::sqrt(d2) / perp;
  for (std::size_t k = 0; k < K; ++k) out[k] = a * hhat[k] + b * out[k];
}

CVector sample_conditional_channel(std::span<const cplx> hhat, const QubModel& model,
                                   RngStream& rng) {
  model.validate();
  if (hhat.size() != model.K)
    throw std::invalid_argument("sample_conditional_channel: dimension does not match the model");
  CVector out(hhat.size());
  sample_conditional_channel(hhat, model, rng, out);
  return out;
}

}  // namespace lsbc
