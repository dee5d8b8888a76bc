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

// Distributional oracles for the multivariate t model.

#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ecftmf/mvt.hpp"

namespace oracle {

/// Density of s = r² implied by the model's log-density along a ray:
/// p(s) = (π^(d/2)/Γ(d/2)) · s^(d/2−1) · p_z(√s·e₁).
inline double radial_density(double s, const ecftmf::mvt::BackgroundModel& model) {
  if (s <= 0.0) return 0.0;
  const std::size_t d = model.dim();
  std::vector<double> x(d, 0.0);
  x[0] = std::sqrt(s);
  const double dd = static_cast<double>(d);
  const double log_shell = 0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd) + (0.5 * dd - 1.0) * std::log(s);
  return std::exp(log_shell + ecftmf::mvt::log_density(x, model));
}

/// Kolmogorov–Smirnov statistic of samples of r² against the radial law,
/// with the CDF accumulated by Gauss–Legendre quadrature between sorted
/// sample points.
inline double ks_radial(std::vector<double> r2, const ecftmf::mvt::BackgroundModel& model) {
  std::sort(r2.begin(), r2.end());
  const double n = static_cast<double>(r2.size());
  auto f = [&](double s) { return radial_density(s, model); };
  double cdf = 0.0;
  double prev = 0.0;
  double ks = 0.0;
  for (std::size_t i = 0; i < r2.size(); ++i) {
    // Split long gaps so each panel stays well resolved.
    const double gap = r2[i] - prev;
    const int panels = 1 + static_cast<int>(gap / 0.25);
    for (int p = 0; p < panels; ++p) {
      const double a = prev + gap * p / panels;
      const double b = prev + gap * (p + 1) / panels;
      cdf += boost::math::quadrature::gauss<double, 30>::integrate(f, a, b);
    }
    prev = r2[i];
    ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n), std::abs(cdf - static_cast<double>(i + 1) / n)});
  }
  return ks;
}

/// Two-sided 1% critical value of the KS statistic (asymptotic).
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

}  // namespace oracle
