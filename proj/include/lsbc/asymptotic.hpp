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

#ifndef LSBC_ASYMPTOTIC_HPP
#define LSBC_ASYMPTOTIC_HPP

namespace lsbc {

/// Large-system operating point: K -> infinity with s/K -> sbar and r/K -> rbar.
struct AsymptoticParams {
  double P = 0.0;
  double sbar = 1.0;  // in (0, 1]
  double rbar = 0.0;  // >= 0, may be +inf for perfect feedback

  void validate() const;
  // Limit of the quantization error, 2^-rbar.
  [[nodiscard]] double dbar() const noexcept;
  // Limit of nr: 1 + (P/sbar)(1 - Dbar) + P Dbar.
  [[nodiscard]] double nr() const noexcept;
};

// Limit of 1 + |W_i|^2 at normalized user index ibar.
double x_inf(double ibar, const AsymptoticParams& params);
// Limit of the inflation scalar c_i.
double c_inf(double ibar, const AsymptoticParams& params);
// Limit of the useful-signal term f_i: (1/sbar)(1-Dbar)(1-ibar sbar)(c_inf ibar sbar + 1)^2.
double f_inf(double ibar, const AsymptoticParams& params);
// NR x_inf - P f_inf, the argument of the integrated logarithm.
double rho_log_argument(double ibar, const AsymptoticParams& params);

/// Asymptotic ZFDPC throughput in bits per channel use per antenna:
///   rho = sbar { log2 NR - int_0^1 log2(rho_log_argument(ibar)) d ibar }.
/// Throws NumericDomainError if the log argument is non-positive at a node.
double rho(const AsymptoticParams& params, double tol = 1e-8);

// Perfect-feedback throughput sbar int_0^1 log2(1 + (P/sbar)(1 - ibar sbar)) d ibar.
double rho_perfect(double P, double sbar, double tol = 1e-8);

// Bits to nats.
double to_nats(double bits) noexcept;

}  // namespace lsbc

#endif  // LSBC_ASYMPTOTIC_HPP
