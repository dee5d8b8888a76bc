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

#include "ecftmf/mvt.hpp"

#include <cmath>
#include <numbers>

#include "ecftmf/error.hpp"
#include "ecftmf/simd/kernels.hpp"

namespace ecftmf::mvt {
namespace {

void require_nu(double nu) {
  if (std::isnan(nu) || !(nu > 2.0)) {
    throw ValidationError("nu must be > 2 or inf, got " + std::to_string(nu), "nu");
  }
}

}  // namespace

BackgroundModel::BackgroundModel(std::vector<double> mu, SpdFactor cov, double nu)
    : mu_(std::move(mu)), cov_(std::move(cov)), nu_(nu) {
  require_nu(nu_);
  if (mu_.size() != cov_.dim()) {
    throw DimensionError("background mean has " + std::to_string(mu_.size()) +
                         " channels, covariance has " + std::to_string(cov_.dim()));
  }
}

BackgroundModel BackgroundModel::standard(std::size_t d, double nu) {
  return BackgroundModel(std::vector<double>(d, 0.0), SpdFactor::identity(d), nu);
}

double log_normalizer(std::size_t d, double nu) {
  require_nu(nu);
  const double dd = static_cast<double>(d);
  return std::lgamma(0.5 * (dd + nu)) - std::lgamma(0.5 * nu) -
         0.5 * dd * std::log((nu - 2.0) * std::numbers::pi);
}

double log_density_from_radius(double m, std::size_t d, double log_det, double nu) {
  require_nu(nu);
  const double dd = static_cast<double>(d);
  if (nu == kGaussian) {
    return -0.5 * dd * std::log(2.0 * std::numbers::pi) - 0.5 * log_det - 0.5 * m;
  }
  return log_normalizer(d, nu) - 0.5 * log_det - 0.5 * (dd + nu) * std::log1p(m / (nu - 2.0));
}

double log_density(std::span<const double> x, const BackgroundModel& model) {
  const double m = mahalanobis_sq(x, model.mu(), model.cov());
  return log_density_from_radius(m, model.dim(), model.cov().log_det(), model.nu());
}

DataMatrix sample(const BackgroundModel& model, std::size_t n, Rng& rng) {
  if (n == 0) throw ValidationError("sample count must be >= 1", "n");
  const std::size_t d = model.dim();
  DataMatrix out(n, d);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::chi_squared_distribution<double> chi2(model.gaussian() ? 1.0 : model.nu());
  std::vector<double> g(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (double& v : g) v = normal(rng);
    double scale = 1.0;
    if (!model.gaussian()) {
      scale = std::sqrt((model.nu() - 2.0) / chi2(rng));
    }
    auto row = out.row(r);
    model.cov().lower_multiply(g, row);
    for (std::size_t i = 0; i < d; ++i) row[i] = model.mu()[i] + scale * row[i];
  }
  return out;
}

NuEstimate estimate_nu(const DataMatrix& whitened) {
  const std::size_t n = whitened.rows();
  const std::size_t d = whitened.cols();
  if (n == 0 || d == 0) throw ValidationError("estimate_nu needs a non-empty matrix", "data");

  double sum_r4 = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double r2 = simd::squared_norm(whitened.row(r));
    sum_r4 += r2 * r2;
  }
  const double dd = static_cast<double>(d);
  NuEstimate est;
  est.kappa = sum_r4 / static_cast<double>(n) / (dd * (dd + 2.0));
  est.nu = est.kappa <= 1.0 ? kGaussian : (4.0 * est.kappa - 2.0) / (est.kappa - 1.0);
  if (n < 10 * d) {
    est.warning = "only " + std::to_string(n) + " rows for " + std::to_string(d) +
                  " channels; nu estimate is unreliable below 10*d rows";
  }
  return est;
}

}  // namespace ecftmf::mvt
