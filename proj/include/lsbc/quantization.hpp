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

#ifndef LSBC_QUANTIZATION_HPP
#define LSBC_QUANTIZATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lsbc/channel.hpp"
#include "lsbc/numerics.hpp"
#include "lsbc/rng.hpp"

namespace lsbc {

/// Quantization-cell upper-bound (QUB) model of r-bit direction feedback.
///
/// Each codeword's cell is a spherical cap holding a 2^-r fraction of the
/// unit sphere in C^K, i.e. the cap sin^2(angle) <= delta with
/// delta = 2^(-r/(K-1)). The quantization error d^2 then has CDF
/// 2^r x^(K-1) on [0, delta].
struct QubModel {
  std::size_t K = 2;
  double r = 0.0;
  bool perfect = false;  // d^2 == 0; permits K = 1

  static QubModel from_config(const SystemConfig& cfg) noexcept {
    return {cfg.K, cfg.r, cfg.perfect_csit};
  }

  void validate() const;
  [[nodiscard]] double delta() const noexcept;
};

// Quantized channel state seen by the transmitter plus the hidden error geometry.
struct QuantizedCsit {
  ComplexMatrix hhat;                 // unit-norm columns
  std::vector<double> dc2;            // sin^2 of the angle between h_i and hhat_i
  std::vector<CVector> edir;          // unit error directions, orthogonal to hhat_i
  std::vector<double> channel_norms;  // ||h_i||^2
};

// d^2 = delta * U^(1/(K-1)); zero for a perfect model.
double draw_distortion(const QubModel& model, RngStream& rng);

// Unit vector uniformly distributed on the sphere orthogonal to the unit vector u.
CVector isotropic_orthogonal(std::span<const cplx> u, RngStream& rng);

/// Draws the QUB quantization outcome for every user of h.
///
/// d^2 is sampled from the cell law and a direction v is drawn isotropically
/// orthogonal to the realized direction h~. Then hhat = sqrt(1-d^2) h~ + sqrt(d^2) v
/// and e~ = sqrt(d^2) h~ - sqrt(1-d^2) v, so the decomposition
/// h~ = sqrt(1-d^2) hhat + sqrt(d^2) e~ holds exactly, hhat is isotropic, and
/// e~ is isotropic in the complement of hhat, independent of d^2.
QuantizedCsit quantize_channel(const ChannelRealization& channel, const QubModel& model,
                               RngStream& rng);

struct CodewordMatch {
  std::size_t index = 0;
  double d2 = 0.0;
};

// Nearest codeword by sin^2 of the angle. Codewords must be unit norm.
CodewordMatch quantize_explicit(std::span<const cplx> h, std::span<const CVector> codebook);

// `size` isotropic unit vectors in C^K.
std::vector<CVector> random_codebook(std::size_t K, std::size_t size, RngStream& rng);

// Mean of the QUB cell law: (K-1)/K * delta. Zero for a perfect model.
double expected_distortion(const QubModel& model);

/// Draws h given its quantized direction: ||h||^2 ~ chi^2_{2K} (mean K),
/// d^2 from the cell law, e~ isotropic orthogonal to hhat, and
/// h = ||h|| (sqrt(1-d^2) hhat + sqrt(d^2) e~).
///
/// hhat may be expressed in any orthonormal basis; the result is in the same
/// basis. `out` must have hhat.size() entries.
void sample_conditional_channel(std::span<const cplx> hhat, const QubModel& model, RngStream& rng,
                                std::span<cplx> out);
CVector sample_conditional_channel(std::span<const cplx> hhat, const QubModel& model,
                                   RngStream& rng);

}  // namespace lsbc

#endif  // LSBC_QUANTIZATION_HPP
