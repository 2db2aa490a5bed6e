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

#ifndef LSBC_RNG_HPP
#define LSBC_RNG_HPP

#include <array>
#include <cstddef>
#include <cstdint>

#include "lsbc/numerics.hpp"

namespace lsbc {

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// The key is the 64-bit seed; the counter holds the 64-bit stream id and a
/// 64-bit block index. A Monte Carlo trial owns the stream whose id is its
/// trial index, so results do not depend on which thread ran the trial.
class RngStream {
 public:
  using result_type = std::uint32_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return 0xFFFFFFFFu; }

  result_type operator()() noexcept;
  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;
  // Circularly symmetric CN(0, 1): real and imaginary parts each N(0, 1/2).
  cplx complex_normal() noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  std::size_t used_ = 4;
};

// n i.i.d. CN(0, 1) entries. n = 0 is an invalid argument.
CVector sample_complex_gaussian(std::size_t n, RngStream& rng);

}  // namespace lsbc

#endif  // LSBC_RNG_HPP
