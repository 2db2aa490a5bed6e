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

#ifndef LSBC_NUMERICS_HPP
#define LSBC_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsbc {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Raised when a factorization meets a (numerically) rank-deficient input.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a computation leaves its numeric domain (log of a non-positive
// value, non-finite integrand, ill-conditioned system).
class NumericDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const cplx> data() const noexcept { return data_; }

  [[nodiscard]] CVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const cplx> values);

  // First n columns as a rows() x n matrix.
  [[nodiscard]] ComplexMatrix leading_columns(std::size_t n) const;
  [[nodiscard]] ComplexMatrix adjoint() const;
  [[nodiscard]] bool all_finite() const noexcept;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// a^* b
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double squared_norm(std::span<const cplx> a);
double norm(std::span<const cplx> a);

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct QrFactors {
  ComplexMatrix q;  // m x m unitary
  ComplexMatrix r;  // m x n upper triangular, real non-negative diagonal
};

/// Householder QR of an m x n matrix with m >= n.
///
/// The diagonal of R is made real and non-negative, which fixes the first n
/// columns of Q uniquely for full-column-rank input. Throws
/// SingularMatrixError when the smallest |R_kk| is below 1e-12 times the
/// largest, and std::invalid_argument when m < n or the input is empty.
QrFactors qr_factor(const ComplexMatrix& a);

// Solves R x = b for upper-triangular R (leading n x n block used).
CVector solve_upper(const ComplexMatrix& r, std::span<const cplx> b);
// Solves R^* x = b, i.e. a lower-triangular solve with the adjoint of R.
CVector solve_upper_adjoint(const ComplexMatrix& r, std::span<const cplx> b);

/// Solves M x = b for Hermitian positive-definite M via Cholesky.
///
/// Throws NumericDomainError if M is not positive definite or its condition
/// number (estimated from the Cholesky diagonal) exceeds max_condition.
CVector solve_hermitian_pd(const ComplexMatrix& m, std::span<const cplx> b,
                           double max_condition = 1e12);

/// Adaptive composite Simpson quadrature of f over [0, 1].
///
/// Intervals are bisected until the local Richardson error estimate is below
/// the tolerance share of the interval. A non-finite evaluation of f throws
/// NumericDomainError.
double integrate_01(const std::function<double(double)>& f, double tol = 1e-8);

}  // namespace lsbc

#endif  // LSBC_NUMERICS_HPP
