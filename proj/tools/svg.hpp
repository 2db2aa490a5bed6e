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

#ifndef LSBC_TOOLS_SVG_HPP
#define LSBC_TOOLS_SVG_HPP

#include <string>
#include <vector>

namespace lsbc::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
};

// Standalone SVG line plot with axes, ticks and a legend. Non-finite points
// are skipped.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace lsbc::cli

#endif  // LSBC_TOOLS_SVG_HPP
