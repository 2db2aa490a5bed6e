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

#ifndef LSBC_SELECTION_HPP
#define LSBC_SELECTION_HPP

#include <cstddef>
#include <functional>

namespace lsbc {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for a maximum of f on [lo, hi], stopping once the
// bracket is narrower than tol.
GoldenResult golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                     double tol);

struct SbarOptimum {
  double sbar = 1.0;
  double rho = 0.0;  // bits
};

/// Fraction of active users maximizing the asymptotic throughput.
///
/// A coarse grid sbar = 0.01, 0.02, ..., 1 picks the best cell (ties within
/// 1e-10 go to the larger sbar); golden-section search then refines inside the
/// neighbouring grid cells to `tol`. The refined point replaces the grid
/// winner only if it is at least as good, so the result is never worse than
/// any grid point.
SbarOptimum sbar_opt(double P, double rbar, double tol = 1e-6);

// round(sbar_opt(P, r/K) * K), clamped to [1, K].
std::size_t s_opt_finite(std::size_t K, double r, double P);

}  // namespace lsbc

#endif  // LSBC_SELECTION_HPP
