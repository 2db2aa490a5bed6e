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

#include "lsbc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lsbc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
  CVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const cplx> values) {
  if (values.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

ComplexMatrix ComplexMatrix::leading_columns(std::size_t n) const {
  if (n > cols_) throw std::invalid_argument("leading_columns: n exceeds column count");
  ComplexMatrix out(rows_, n);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix difference: shape mismatch");
  ComplexMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double squared_norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& z : a) acc += std::norm(z);
  return acc;
}

double norm(std::span<const cplx> a) { return std::sqrt(squared_norm(a)); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) worst = std::max(worst, std::abs(da[i] - db[i]));
  return worst;
}

QrFactors qr_factor(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (n == 0 || m < n) throw std::invalid_argument("qr_factor: need rows >= cols >= 1");

  ComplexMatrix r = a;
  std::vector<CVector> reflectors(n);
  std::vector<double> beta(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    CVector v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = r(i, k);
    const double alpha = norm(v);
    if (alpha == 0.0) continue;  // column already zero below the diagonal; caught by the rank test
    const cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx{1.0, 0.0};
    v[0] += phase * alpha;
    const double vv = squared_norm(v);
    beta[k] = 2.0 / vv;
    for (std::size_t j = k; j < n; ++j) {
      cplx proj{};
      for (std::size_t i = k; i < m; ++i) proj += std::conj(v[i - k]) * r(i, j);
      proj *= beta[k];
      for (std::size_t i = k; i < m; ++i) r(i, j) -= v[i - k] * proj;
    }
    // Exact zeros below the diagonal.
    for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-1}, accumulated right to left onto the identity.
  ComplexMatrix q = ComplexMatrix::identity(m);
  for (std::size_t kk = n; kk-- > 0;) {
    if (beta[kk] == 0.0) continue;
    const CVector& v = reflectors[kk];
    for (std::size_t j = 0; j < m; ++j) {
      cplx proj{};
      for (std::size_t i = kk; i < m; ++i) proj += std::conj(v[i - kk]) * q(i, j);
      proj *= beta[kk];
      for (std::size_t i = kk; i < m; ++i) q(i, j) -= v[i - kk] * proj;
    }
  }

  // Rotate phases so diag(R) is real and non-negative.
  double largest = 0.0;
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    largest = std::max(largest, mag);
    smallest = std::min(smallest, mag);
    if (mag == 0.0) continue;
    const cplx d = r(k, k) / mag;
    for (std::size_t j = k; j < n; ++j) r(k, j) *= std::conj(d);
    r(k, k) = mag;
    for (std::size_t i = 0; i < m; ++i) q(i, k) *= d;
  }
  if (!(largest > 0.0) || smallest <= 1e-12 * largest)
    throw SingularMatrixError("qr_factor: matrix is numerically rank deficient");

  return {std::move(q), std::move(r)};
}

CVector solve_upper(const ComplexMatrix& r, std::span<const cplx> b) {
  const std::size_t n = b.size();
  CVector x(b.begin(), b.end());
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= r(ii, j) * x[j];
    if (r(ii, ii) == cplx{}) throw SingularMatrixError("solve_upper: zero pivot");
    x[ii] /= r(ii, ii);
  }
  return x;
}

CVector solve_upper_adjoint(const ComplexMatrix& r, std::span<const cplx> b) {
  const std::size_t n = b.size();
  CVector x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) x[i] -= std::conj(r(j, i)) * x[j];
    if (r(i, i) == cplx{}) throw SingularMatrixError("solve_upper_adjoint: zero pivot");
    x[i] /= std::conj(r(i, i));
  }
  return x;
}

CVector solve_hermitian_pd(const ComplexMatrix& m, std::span<const cplx> b, double max_condition) {
  const std::size_t n = m.rows();
  if (m.cols() != n || b.size() != n)
    throw std::invalid_argument("solve_hermitian_pd: shape mismatch");
  if (n == 0) return {};

  // Upper factor U with M = U^* U, so the solve reuses the triangular helpers.
  ComplexMatrix u(n, n);
  double dmax = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double diag = m(i, i).real();
    for (std::size_t k = 0; k < i; ++k) diag -= std::norm(u(k, i));
    if (!(diag > 0.0)) throw NumericDomainError("solve_hermitian_pd: matrix is not positive definite");
    const double uii = std::sqrt(diag);
    u(i, i) = uii;
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx acc = m(i, j);
      for (std::size_t k = 0; k < i; ++k) acc -= std::conj(u(k, i)) * u(k, j);
      u(i, j) = acc / uii;
    }
    dmax = std::max(dmax, uii);
    dmin = std::min(dmin, uii);
  }
  const double cond_estimate = (dmax / dmin) * (dmax / dmin);
  if (cond_estimate > max_condition)
    throw NumericDomainError("solve_hermitian_pd: condition estimate " +
                             std::to_string(cond_estimate) + " exceeds limit");
  return solve_upper(u, solve_upper_adjoint(u, b));
}

}  // namespace lsbc
