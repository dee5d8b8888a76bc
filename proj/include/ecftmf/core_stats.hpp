// Copyright 2026 The ecftmf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

/// Dense linear-algebra and moment-estimation substrate: sample mean and
/// covariance, Cholesky factorization, whitening and Mahalanobis forms.
namespace ecftmf {

/// Row-major dense matrix of doubles. As a data matrix each row is one pixel
/// (a spectrum over `cols()` channels).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  /// Builds from nested rows; all rows must have equal length.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t r, std::size_t c) noexcept { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {values_.data() + r * cols_, cols_};
  }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// N samples by d channels.
using DataMatrix = Matrix;

/// Cholesky factor L (lower, L·Lᵀ = R) of a symmetric positive-definite
/// covariance. Immutable after construction.
class SpdFactor {
 public:
  /// Factorizes `cov + ridge·I`. Only the lower triangle of `cov` is read.
  /// Throws SingularCovarianceError naming the first non-positive pivot.
  static SpdFactor factorize(Matrix cov, double ridge = 0.0);

  static SpdFactor identity(std::size_t d);

  std::size_t dim() const noexcept { return lower_.rows(); }
  const Matrix& covariance() const noexcept { return cov_; }
  const Matrix& lower() const noexcept { return lower_; }
  double log_det() const noexcept { return log_det_; }

  /// Solves L·y = b.
  void forward_solve(std::span<const double> b, std::span<double> y) const;
  std::vector<double> forward_solve(std::span<const double> b) const;

  /// Computes y = L·g.
  void lower_multiply(std::span<const double> g, std::span<double> y) const;

 private:
  SpdFactor(Matrix cov, Matrix lower, double log_det)
      : cov_(std::move(cov)), lower_(std::move(lower)), log_det_(log_det) {}

  Matrix cov_;
  Matrix lower_;
  double log_det_ = 0.0;
};

struct MeanCov {
  std::vector<double> mean;
  SpdFactor factor;
};

/// Column means and the 1/N-normalized scatter of de-meaned rows, factorized.
/// Requires N ≥ d + 1 and finite entries.
MeanCov estimate_mean_cov(const DataMatrix& data, double ridge = 0.0);

/// (x−µ)ᵀR⁻¹(x−µ) by a forward solve against L.
double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const SpdFactor& factor);

/// Maps every row x to L⁻¹(x−µ).
DataMatrix whiten(const DataMatrix& data, std::span<const double> mu, const SpdFactor& factor);

/// Whitens a single pixel into `out`.
void whiten_into(std::span<const double> x, std::span<const double> mu, const SpdFactor& factor,
                 std::span<double> out);

}  // namespace ecftmf
