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

#include "ecftmf/core_stats.hpp"

#include <cmath>
#include <string>

#include "ecftmf/error.hpp"
#include "ecftmf/simd/kernels.hpp"

namespace ecftmf {
namespace {

// A pivot this small relative to its diagonal entry is cancellation noise.
constexpr double kPivotRelTol = 1e-14;

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw DimensionError("matrix: " + std::to_string(values_.size()) + " values for " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("matrix: ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(values));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SpdFactor SpdFactor::factorize(Matrix cov, double ridge) {
  const std::size_t d = cov.rows();
  if (d == 0 || cov.cols() != d) throw DimensionError("covariance must be square and non-empty");
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) throw ValidationError("ridge must be >= 0", "ridge");

  for (std::size_t i = 0; i < d; ++i) {
    cov(i, i) += ridge;
    for (std::size_t j = 0; j < i; ++j) cov(j, i) = cov(i, j);
  }

  Matrix lower(d, d);
  double log_det = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    auto li = lower.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      auto lj = lower.row(j);
      const double s = cov(i, j) - simd::dot(li.first(j), lj.first(j));
      if (i == j) {
        if (!(s > kPivotRelTol * std::abs(cov(i, i))) || !std::isfinite(s)) {
          throw SingularCovarianceError(i, s);
        }
        li[i] = std::sqrt(s);
        log_det += 2.0 * std::log(li[i]);
      } else {
        li[j] = s / lj[j];
      }
    }
  }
  return SpdFactor(std::move(cov), std::move(lower), log_det);
}

SpdFactor SpdFactor::identity(std::size_t d) {
  if (d == 0) throw DimensionError("identity factor needs d >= 1");
  return SpdFactor(Matrix::identity(d), Matrix::identity(d), 0.0);
}

void SpdFactor::forward_solve(std::span<const double> b, std::span<double> y) const {
  const std::size_t d = dim();
  require_dim(b.size(), d, "forward_solve");
  require_dim(y.size(), d, "forward_solve");
  for (std::size_t i = 0; i < d; ++i) {
    auto li = lower_.row(i);
    y[i] = (b[i] - simd::dot(li.first(i), y.first(i))) / li[i];
  }
}

std::vector<double> SpdFactor::forward_solve(std::span<const double> b) const {
  std::vector<double> y(dim());
  forward_solve(b, y);
  return y;
}

void SpdFactor::lower_multiply(std::span<const double> g, std::span<double> y) const {
  const std::size_t d = dim();
  require_dim(g.size(), d, "lower_multiply");
  require_dim(y.size(), d, "lower_multiply");
  for (std::size_t i = 0; i < d; ++i) y[i] = simd::dot(lower_.row(i).first(i + 1), g.first(i + 1));
}

MeanCov estimate_mean_cov(const DataMatrix& data, double ridge) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  if (n == 0 || d == 0) throw ValidationError("data matrix must have at least one row and column", "data");
  for (double v : data.values()) {
    if (!std::isfinite(v)) throw ValidationError("data matrix contains a non-finite entry", "data");
  }

  std::vector<double> mean(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) simd::axpy(1.0, data.row(r), mean);
  for (double& m : mean) m /= static_cast<double>(n);

  Matrix cov(d, d);
  std::vector<double> diff(d);
  for (std::size_t r = 0; r < n; ++r) {
    simd::subtract(data.row(r), mean, diff);
    for (std::size_t i = 0; i < d; ++i) {
      simd::axpy(diff[i], std::span<const double>(diff).first(i + 1), cov.row(i).first(i + 1));
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& v : cov.values()) v *= inv_n;

  return MeanCov{std::move(mean), SpdFactor::factorize(std::move(cov), ridge)};
}

void whiten_into(std::span<const double> x, std::span<const double> mu, const SpdFactor& factor,
                 std::span<double> out) {
  require_dim(x.size(), factor.dim(), "whiten");
  require_dim(mu.size(), factor.dim(), "whiten");
  require_dim(out.size(), factor.dim(), "whiten");
  simd::subtract(x, mu, out);
  factor.forward_solve(out, out);
}

double mahalanobis_sq(std::span<const double> x, std::span<const double> mu, const SpdFactor& factor) {
  std::vector<double> y(factor.dim());
  whiten_into(x, mu, factor, y);
  return simd::squared_norm(y);
}

DataMatrix whiten(const DataMatrix& data, std::span<const double> mu, const SpdFactor& factor) {
  require_dim(data.cols(), factor.dim(), "whiten");
  DataMatrix out(data.rows(), data.cols());
  for (std::size_t r = 0; r < data.rows(); ++r) whiten_into(data.row(r), mu, factor, out.row(r));
  return out;
}

}  // namespace ecftmf
