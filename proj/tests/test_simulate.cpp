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

#include <gtest/gtest.h>

#include <cmath>

#include "ecftmf/error.hpp"
#include "ecftmf/evaluate.hpp"
#include "ecftmf/simulate.hpp"
#include "oracles.hpp"

using namespace ecftmf;
using sim::ScenarioConfig;

namespace {

ScenarioConfig config(double nu, std::size_t d, double T, double alpha, std::size_t n, std::uint64_t seed) {
  ScenarioConfig c;
  c.nu = nu;
  c.d = d;
  c.magnitude = T;
  c.alpha = alpha;
  c.n = n;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(MakeTarget, FirstAxisScaledByMagnitude) {
  const auto t = sim::make_target(4, 2.5);
  EXPECT_EQ(t.signature, (std::vector<double>{2.5, 0.0, 0.0, 0.0}));
  EXPECT_DOUBLE_EQ(t.magnitude(), 2.5);
  EXPECT_THROW(sim::make_target(0, 1.0), ValidationError);
  EXPECT_THROW(sim::make_target(3, 0.0), ValidationError);
}

TEST(Generate, SameSeedSameData) {
  const auto a = sim::generate(config(10.0, 7, 3.0, 0.5, 200, 11));
  const auto b = sim::generate(config(10.0, 7, 3.0, 0.5, 200, 11));
  const auto c = sim::generate(config(10.0, 7, 3.0, 0.5, 200, 12));
  EXPECT_EQ(a.background, b.background);
  EXPECT_EQ(a.targets, b.targets);
  EXPECT_FALSE(a.background == c.background);
}

TEST(Generate, ShapesFollowConfig) {
  const auto ds = sim::generate(config(10.0, 90, 3.0, 0.5, 321, 1));
  EXPECT_EQ(ds.background.rows(), 321u);
  EXPECT_EQ(ds.background.cols(), 90u);
  EXPECT_EQ(ds.targets.rows(), 321u);
  EXPECT_EQ(ds.targets.cols(), 90u);
  EXPECT_EQ(ds.target_spec.dim(), 90u);
}

TEST(Generate, TargetsArePairedWithBackground) {
  const double alpha = 0.37;
  const auto ds = sim::generate(config(6.0, 5, 4.0, alpha, 500, 3));
  for (std::size_t r = 0; r < ds.targets.rows(); ++r) {
    for (std::size_t i = 0; i < 5; ++i) {
      const double z = (ds.targets(r, i) - alpha * ds.target_spec.signature[i]) / (1.0 - alpha);
      EXPECT_NEAR(z, ds.background(r, i), 1e-12 * std::max(1.0, std::abs(z)));
    }
  }
}

TEST(Generate, NearFullFillReproducesTarget) {
  const auto ds = sim::generate(config(10.0, 6, 3.0, 1.0 - 1e-12, 200, 4));
  for (std::size_t r = 0; r < ds.targets.rows(); ++r)
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(ds.targets(r, i), ds.target_spec.signature[i], 1e-9);
}

TEST(Generate, MatchedFilterMeanOnWideScenario) {
  // E[MF] = α·T for unit R and target along e₁.
  const auto ds = sim::generate(config(10.0, 90, 3.0, 0.5, 10000, 5));
  double sum = 0.0;
  for (std::size_t r = 0; r < ds.targets.rows(); ++r) sum += eval::mfr_project(ds.targets.row(r), ds.target_spec).mf;
  EXPECT_NEAR(sum / ds.targets.rows(), 1.5, 0.05);
}

TEST(Generate, BackgroundCovarianceIsIdentity) {
  const std::size_t n = 20000, d = 4;
  const auto ds = sim::generate(config(10.0, d, 3.0, 0.5, n, 6));
  const Eigen::MatrixXd X = oracle::mat(ds.background);
  const Eigen::MatrixXd S = X.transpose() * X / static_cast<double>(n);
  // Kurtosis of ν = 10 inflates the variance of each entry; 5/√n leaves room.
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(S(i, j), i == j ? 1.0 : 0.0, tol);
}

TEST(Implant, AppliesReplacementMix) {
  const auto bg = Matrix::from_rows({{1.0, 2.0}, {-1.0, 0.0}});
  const auto out = sim::implant(bg, detect::TargetSpec{{4.0, 0.0}}, 0.25);
  EXPECT_EQ(out, Matrix::from_rows({{1.75, 1.5}, {0.25, 0.0}}));
  EXPECT_THROW(sim::implant(bg, detect::TargetSpec{{4.0}}, 0.25), DimensionError);
}

TEST(ScenarioConfig, RejectsBadFieldsByName) {
  auto field_of = [](ScenarioConfig c) {
    try {
      c.validate();
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  const auto good = config(10.0, 5, 3.0, 0.5, 10, 0);
  EXPECT_EQ(field_of(good), "<none>");
  auto c = good;
  c.alpha = 1.5;
  EXPECT_EQ(field_of(c), "alpha");
  c = good;
  c.alpha = 0.0;
  EXPECT_EQ(field_of(c), "alpha");
  c = good;
  c.nu = 2.0;
  EXPECT_EQ(field_of(c), "nu");
  c = good;
  c.nu = std::numeric_limits<double>::infinity();
  EXPECT_EQ(field_of(c), "<none>");
  c = good;
  c.d = 0;
  EXPECT_EQ(field_of(c), "d");
  c = good;
  c.magnitude = -1.0;
  EXPECT_EQ(field_of(c), "T");
  c = good;
  c.n = 0;
  EXPECT_EQ(field_of(c), "n");
  EXPECT_THROW(sim::generate(config(10.0, 5, 3.0, 1.5, 10, 0)), ValidationError);
}
