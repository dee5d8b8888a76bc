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
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ecftmf/core_stats.hpp"

/// Multivariate t background model, parameterized so that R is the true
/// covariance:
///
///   p(z) = c · |R|^(-1/2) · (1 + (z−µ)ᵀR⁻¹(z−µ)/(ν−2))^(−(d+ν)/2)
///
/// with log c = lnΓ((d+ν)/2) − lnΓ(ν/2) − (d/2)·ln((ν−2)π). ν = ∞ selects
/// the Gaussian everywhere.
namespace ecftmf::mvt {

inline constexpr double kGaussian = std::numeric_limits<double>::infinity();

/// Random stream consumed by the sampler.
using Rng = std::mt19937_64;

class BackgroundModel {
 public:
  /// Throws ValidationError unless ν > 2 (finite) or ν = ∞, and mu matches
  /// the factor's dimension.
  BackgroundModel(std::vector<double> mu, SpdFactor cov, double nu);

  /// Zero mean, identity covariance.
  static BackgroundModel standard(std::size_t d, double nu);

  std::size_t dim() const noexcept { return mu_.size(); }
  std::span<const double> mu() const noexcept { return mu_; }
  const SpdFactor& cov() const noexcept { return cov_; }
  double nu() const noexcept { return nu_; }
  bool gaussian() const noexcept { return nu_ == kGaussian; }

 private:
  std::vector<double> mu_;
  SpdFactor cov_;
  double nu_;
};

/// Log normalizing constant log c for finite ν > 2.
double log_normalizer(std::size_t d, double nu);

/// Log-density as a function of the squared Mahalanobis radius. Valid for
/// finite ν > 2 or ν = ∞.
double log_density_from_radius(double mahalanobis_sq, std::size_t d, double log_det, double nu);

double log_density(std::span<const double> x, const BackgroundModel& model);

/// Draws n i.i.d. rows: x = µ + L·g·√((ν−2)/w), g ~ N(0, I), w ~ χ²(ν).
/// The Gaussian branch draws x = µ + L·g. Per row, the d normals are drawn
/// before w.
DataMatrix sample(const BackgroundModel& model, std::size_t n, Rng& rng);

struct NuEstimate {
  double nu = kGaussian;
  /// Normalized fourth moment mean(r⁴)/(d(d+2)); 1 for Gaussian data.
  double kappa = 1.0;
  std::optional<std::string> warning;
};

/// Fourth-moment estimate of ν from de-meaned, whitened rows:
/// κ̂ = mean(r⁴)/(d(d+2)), ν̂ = (4κ̂−2)/(κ̂−1), ∞ when κ̂ ≤ 1. Sets a warning
/// when N < 10·d.
NuEstimate estimate_nu(const DataMatrix& whitened);

}  // namespace ecftmf::mvt
