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

#include "lsbc/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lsbc/asymptotic.hpp"

namespace lsbc {
namespace {

constexpr int kGridPoints = 100;
constexpr double kTieTolerance = 1e-10;
constexpr double kQuadratureTol = 1e-10;

}  // namespace

GoldenResult golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                     double tol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_maximize: empty bracket");
  if (!(tol > 0.0)) throw std::invalid_argument("golden_section_maximize: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

SbarOptimum sbar_opt(double P, double rbar, double tol) {
  if (!std::isfinite(P) || P < 0.0) throw std::invalid_argument("sbar_opt: P must be finite and >= 0");
  if (!(rbar >= 0.0)) throw std::invalid_argument("sbar_opt: rbar must be >= 0");
  const auto throughput = [&](double sbar) { return rho({P, sbar, rbar}, kQuadratureTol); };

  int best_k = 1;
  double best = -1.0;
  for (int k = 1; k <= kGridPoints; ++k) {
    const double value = throughput(static_cast<double>(k) / kGridPoints);
    if (value >= best - kTieTolerance) {
      // A later point within the tie band wins only if it does not lose more
      // than the band to the running best.
      best_k = k;
      best = std::max(best, value);
    }
  }
  const double grid_sbar = static_cast<double>(best_k) / kGridPoints;
  const double grid_value = throughput(grid_sbar);

  const double lo = std::max(static_cast<double>(best_k - 1) / kGridPoints, 1e-6);
  const double hi = std::min(static_cast<double>(best_k + 1) / kGridPoints, 1.0);
  const GoldenResult refined = golden_section_maximize(throughput, lo, hi, tol);
  if (refined.value > grid_value + kTieTolerance) return {refined.x, refined.value};
  return {grid_sbar, grid_value};
}

std::size_t s_opt_finite(std::size_t K, double r, double P) {
  if (K == 0) throw std::invalid_argument("s_opt_finite: K must be >= 1");
  if (K == 1) return 1;
  const SbarOptimum opt = sbar_opt(P, r / static_cast<double>(K));
  const double scaled = std::round(opt.sbar * static_cast<double>(K));
  return static_cast<std::size_t>(std::clamp(scaled, 1.0, static_cast<double>(K)));
}

}  // namespace lsbc
