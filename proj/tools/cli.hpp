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

#ifndef LSBC_TOOLS_CLI_HPP
#define LSBC_TOOLS_CLI_HPP

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsbc::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumeric = 2;

// Raised for bad flag combinations and unwritable outputs; maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits, enough to round-trip any double; nan/inf spelled out.
std::string format_double(double v);

// "x" gives {x}; "lo:hi:n" gives n evenly spaced values from lo to hi.
std::vector<double> parse_grid(const std::string& spec);

/// Runs one command line (without the program name) and returns its exit
/// code. Data goes to `out` unless redirected by --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lsbc::cli

#endif  // LSBC_TOOLS_CLI_HPP
