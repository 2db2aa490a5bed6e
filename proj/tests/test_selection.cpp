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
#include <vector>

#include "doctest.h"
#include "lsbc/asymptotic.hpp"
#include "lsbc/selection.hpp"

using namespace lsbc;

TEST_CASE("golden-section search") {
  const GoldenResult g = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3) + 2.0; }, 0.0, 1.0, 1e-9);
  CHECK(g.x == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(g.value == doctest::Approx(2.0).epsilon(1e-15));
  // Monotone function: the maximum sits on the upper edge.
  CHECK(golden_section_maximize([](double x) { return x; }, 0.0, 1.0, 1e-9).x == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("sbar_opt beats every grid point") {
  for (double P : {0.1, 1.0, 10.0, 1000.0})
    for (double rb : {0.5, 1.0, 5.0}) {
      const SbarOptimum o = sbar_opt(P, rb);
      CHECK(o.sbar > 0.0);
      CHECK(o.sbar <= 1.0);
      CHECK(o.rho == doctest::Approx(rho(AsymptoticParams{P, o.sbar, rb})).epsilon(1e-9));
      for (int k = 1; k <= 100; ++k) CHECK(o.rho >= rho(AsymptoticParams{P, k / 100.0, rb}) - 1e-12);
    }
}

TEST_CASE("shape in P at rbar = 1") {
  const std::vector<double> powers{0.1, 1.0, 10.0, 100.0, 1000.0};
  std::vector<double> s;
  for (double P : powers) s.push_back(sbar_opt(P, 1.0).sbar);
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k] >= s[k - 1] - 0.01);
  CHECK(std::abs(s[4] - s[3]) <= 0.01);
  CHECK(s[4] - s[0] > 0.1);
}

TEST_CASE("more feedback serves more users") {
  for (double P : {0.1, 1.0, 10.0, 100.0, 1000.0}) CHECK(sbar_opt(P, 5.0).sbar >= sbar_opt(P, 1.0).sbar);
}

TEST_CASE("full load is comparable to the optimum") {
  const double ratio = rho(AsymptoticParams{10.0, 1.0, 1.0}) / sbar_opt(10.0, 1.0).rho;
  CHECK(ratio >= 0.7);
  // Regression value.
  CHECK(ratio == doctest::Approx(0.82546104).epsilon(1e-6));
}

TEST_CASE("finite-K mapping") {
  CHECK(s_opt_finite(5, 10.0, 10.0) == 4);
  CHECK(s_opt_finite(5, 10.0, 1.0) == 3);
  CHECK(s_opt_finite(1, 0.0, 10.0) == 1);
  CHECK(s_opt_finite(1, 5.0, 10.0) == 1);
  // Abundant feedback pushes sbar_opt near 1.
  CHECK(s_opt_finite(8, 8.0 * 30.0, 1000.0) == 8);
  CHECK(s_opt_finite(1000, 1000.0, 0.1) >= 1);
}
