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

#include "lsbc/asymptotic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "lsbc/numerics.hpp"

namespace lsbc {
namespace {

void check_ibar(double ibar) {
  if (!(ibar >= 0.0 && ibar <= 1.0)) throw std::invalid_argument("normalized user index must lie in [0, 1]");
}

// Shared pieces of the limits at ibar.
struct Terms {
  double a;    // (P/sbar)(1 - Dbar)
  double u;    // ibar sbar
  double v;    // 1 - ibar sbar
  double den;  // 1 + P Dbar + a v
};

Terms terms(double ibar, const AsymptoticParams& p) {
  const double a = p.P / p.sbar * (1.0 - p.dbar());
  const double u = ibar * p.sbar;
  const double v = 1.0 - u;
  return {a, u, v, 1.0 + p.P * p.dbar() + a * v};
}

}  // namespace

void AsymptoticParams::validate() const {
  if (!std::isfinite(P) || P < 0.0) throw std::invalid_argument("AsymptoticParams: P must be finite and >= 0");
  if (!(sbar > 0.0 && sbar <= 1.0)) throw std::invalid_argument("AsymptoticParams: sbar must lie in (0, 1]");
  if (!(rbar >= 0.0)) throw std::invalid_argument("AsymptoticParams: rbar must be >= 0");
}

double AsymptoticParams::dbar() const noexcept { return std::exp2(-rbar); }

double AsymptoticParams::nr() const noexcept {
  return 1.0 + P / sbar * (1.0 - dbar()) + P * dbar();
}

double x_inf(double ibar, const AsymptoticParams& params) {
  params.validate();
  check_ibar(ibar);
  const Terms t = terms(ibar, params);
  return 1.0 + t.a * t.a * t.v * t.u / (t.den * t.den);
}

double c_inf(double ibar, const AsymptoticParams& params) {
  params.validate();
  check_ibar(ibar);
  const Terms t = terms(ibar, params);
  return t.a / t.den;
}

double f_inf(double ibar, const AsymptoticParams& params) {
  const double c = c_inf(ibar, params);
  const Terms t = terms(ibar, params);
  const double lift = c * t.u + 1.0;
  return (1.0 - params.dbar()) * t.v * lift * lift / params.sbar;
}

double rho_log_argument(double ibar, const AsymptoticParams& params) {
  return params.nr() * x_inf(ibar, params) - params.P * f_inf(ibar, params);
}

double rho(const AsymptoticParams& params, double tol) {
  params.validate();
  // No power or no feedback: the log argument equals NR everywhere.
  if (params.P == 0.0 || params.rbar == 0.0) return 0.0;
  const double log_nr = std::log2(params.nr());
  const double integral = integrate_01(
      [&](double ibar) {
        const double arg = rho_log_argument(ibar, params);
        if (!(arg > 0.0)) {
          std::ostringstream msg;
          msg << "rho: non-positive log argument " << arg << " at ibar = " << ibar << " (P = " << params.P
              << ", sbar = " << params.sbar << ", rbar = " << params.rbar << ")";
          throw NumericDomainError(msg.str());
        }
        return std::log2(arg);
      },
      tol);
  return params.sbar * (log_nr - integral);
}

double rho_perfect(double P, double sbar, double tol) {
  AsymptoticParams{P, sbar, 0.0}.validate();
  return sbar * integrate_01([&](double ibar) { return std::log2(1.0 + P / sbar * (1.0 - ibar * sbar)); },
                             tol);
}

double to_nats(double bits) noexcept { return bits * std::numbers::ln2; }

}  // namespace lsbc
