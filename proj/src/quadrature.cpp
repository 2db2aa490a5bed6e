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

#include <cmath>
#include <string>

#include "lsbc/numerics.hpp"

namespace lsbc {
namespace {

constexpr int kMaxDepth = 48;
constexpr int kInitialPanels = 8;

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
};

class Simpson {
 public:
  explicit Simpson(const std::function<double(double)>& f) : f_(f) {}

  double eval(double x) const {
    const double y = f_(x);
    if (!std::isfinite(y))
      throw NumericDomainError("integrate_01: non-finite integrand at x = " + std::to_string(x));
    return y;
  }

  double refine(const Panel& p, double tol, int depth) const {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    const double delta = left + right - p.whole;
    if (depth >= kMaxDepth || std::abs(delta) <= 15.0 * tol)
      return left + right + delta / 15.0;
    return refine({p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth + 1) +
           refine({m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth + 1);
  }

 private:
  const std::function<double(double)>& f_;
};

}  // namespace

double integrate_01(const std::function<double(double)>& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_01: tol must be positive");
  const Simpson rule(f);
  const double h = 1.0 / kInitialPanels;
  double total = 0.0;
  double fa = rule.eval(0.0);
  for (int k = 0; k < kInitialPanels; ++k) {
    const double a = k * h;
    const double b = (k + 1 == kInitialPanels) ? 1.0 : (k + 1) * h;
    const double fm = rule.eval(0.5 * (a + b));
    const double fb = rule.eval(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += rule.refine({a, b, fa, fm, fb, whole}, tol / kInitialPanels, 0);
    fa = fb;
  }
  return total;
}

}  // namespace lsbc
