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

#include <algorithm>
#include <cmath>
#include <random>

#include "ecftmf/detectors.hpp"
#include "ecftmf/error.hpp"
#include "ecftmf/evaluate.hpp"
#include "ecftmf/simulate.hpp"
#include "oracles.hpp"

using namespace ecftmf;
using namespace ecftmf::eval;

namespace {

ScoreSet labeled(const std::vector<double>& background, const std::vector<double>& target) {
  ScoreSet s;
  s.scores = background;
  s.scores.insert(s.scores.end(), target.begin(), target.end());
  s.labels.assign(background.size(), Label::background);
  s.labels.insert(s.labels.end(), target.size(), Label::target);
  return s;
}

}  // namespace

TEST(Mfr, ProjectsOntoTargetAxis) {
  const std::vector<double> t{3.0, 0.0, 0.0};
  const auto on_axis = mfr_project(std::vector<double>{3.0, 0.0, 0.0}, t);
  EXPECT_DOUBLE_EQ(on_axis.mf, 3.0);
  EXPECT_DOUBLE_EQ(on_axis.residual, 0.0);
  const auto off_axis = mfr_project(std::vector<double>{0.0, 4.0, 0.0}, t);
  EXPECT_DOUBLE_EQ(off_axis.mf, 0.0);
  EXPECT_DOUBLE_EQ(off_axis.residual, 4.0);
  const auto mixed = mfr_project(std::vector<double>{1.0, 2.0, 2.0}, std::vector<double>{0.0, 0.0, 5.0});
  EXPECT_DOUBLE_EQ(mixed.mf, 2.0);
  EXPECT_NEAR(mixed.residual, std::sqrt(5.0), 1e-15);
  EXPECT_THROW(mfr_project(std::vector<double>{1.0}, std::vector<double>{0.0}), ValidationError);
  EXPECT_THROW(mfr_project(std::vector<double>{1.0}, t), DimensionError);
}

TEST(Mfr, CoordinatesDetermineEveryDetector) {
  // Whitened frame: two pixels with equal (MF, residual) score identically.
  std::mt19937_64 rng(31);
  const std::size_t d = 8;
  const auto model = mvt::BackgroundModel::standard(d, 7.0);
  const auto target = sim::make_target(d, 3.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double mf = std::normal_distribution<double>(1.0, 2.0)(rng);
    const double res = std::abs(std::normal_distribution<double>(0.0, 3.0)(rng)) + 0.1;
    Eigen::VectorXd a = Eigen::VectorXd::Zero(d), b = Eigen::VectorXd::Zero(d);
    a(0) = b(0) = mf;
    a(1) = res;
    Eigen::VectorXd dir = oracle::random_normal(d, rng);
    dir(0) = 0.0;
    b += res * dir.normalized();
    const auto pa = mfr_project(oracle::stdvec(a), target), pb = mfr_project(oracle::stdvec(b), target);
    EXPECT_NEAR(pa.mf, pb.mf, 1e-12);
    EXPECT_NEAR(pa.residual, pb.residual, 1e-12);
    for (auto kind : detect::kAllDetectors) {
      const double sa = detect::score(oracle::stdvec(a), model, target, kind);
      const double sb = detect::score(oracle::stdvec(b), model, target, kind);
      EXPECT_NEAR(sa, sb, 1e-10 * std::max(1.0, std::abs(sa))) << kind.name();
    }
  }
}

TEST(Auc, PerfectSeparation) {
  EXPECT_EQ(auc(labeled({0.1, 0.2, 0.3}, {0.5, 0.9})), 1.0);
  EXPECT_EQ(auc(labeled({0.5, 0.9}, {0.1, 0.2, 0.3})), 0.0);
}

TEST(Auc, TiesCountHalf) {
  // Pairs: 3 wins of 9 strict, plus 2 ties counting half ... = 7/9.
  EXPECT_DOUBLE_EQ(auc(labeled({1.0, 2.0, 3.0}, {2.0, 3.0, 4.0})), 7.0 / 9.0);
  EXPECT_EQ(auc(labeled({1.0, 1.0}, {1.0})), 0.5);
}

TEST(Auc, MatchesPairEnumeration) {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> coarse(0, 20);  // forces many ties
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> b(50 + rep), t(30 + 2 * rep);
    for (auto& v : b) v = coarse(rng);
    for (auto& v : t) v = coarse(rng) + 2;
    EXPECT_DOUBLE_EQ(auc(labeled(b, t)), oracle::auc_enumerate(b, t));
    EXPECT_NEAR(roc(labeled(b, t)).auc, oracle::auc_enumerate(b, t), 1e-15);
  }
}

TEST(Auc, ShuffledLabelsNearHalf) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> b(5000), t(5000);
  for (auto& v : b) v = n(rng);
  for (auto& v : t) v = n(rng);
  EXPECT_NEAR(auc(labeled(b, t)), 0.5, 0.02);
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(34);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> b(2000), t(1000);
  for (auto& v : b) v = n(rng);
  for (auto& v : t) v = n(rng) + 0.7;
  const double base = auc(labeled(b, t));
  auto mapped = [&](auto f) {
    auto bb = b, tt = t;
    std::transform(bb.begin(), bb.end(), bb.begin(), f);
    std::transform(tt.begin(), tt.end(), tt.begin(), f);
    return auc(labeled(bb, tt));
  };
  EXPECT_EQ(mapped([](double v) { return std::exp(v); }), base);
  EXPECT_EQ(mapped([](double v) { return v * v * v; }), base);
  const auto fa = false_alarm_at_detection(labeled(b, t), 0.5).false_alarm_rate;
  auto bb = b, tt = t;
  for (auto* v : {&bb, &tt}) std::transform(v->begin(), v->end(), v->begin(), [](double x) { return std::exp(x); });
  EXPECT_EQ(false_alarm_at_detection(labeled(bb, tt), 0.5).false_alarm_rate, fa);
}

TEST(Auc, RequiresBothClassesAndFiniteScores) {
  EXPECT_THROW(auc(labeled({1.0, 2.0}, {})), ValidationError);
  EXPECT_THROW(auc(labeled({}, {1.0})), ValidationError);
  EXPECT_THROW(auc(labeled({1.0, NAN}, {2.0})), ValidationError);
  EXPECT_THROW(false_alarm_at_detection(labeled({1.0}, {}), 0.5), ValidationError);
  ScoreSet unlabeled{{1.0, 2.0}, {Label::unlabeled, Label::unlabeled}, detect::kAmf};
  EXPECT_THROW(auc(unlabeled), ValidationError);
  ScoreSet mismatch{{1.0, 2.0}, {Label::target}, detect::kAmf};
  EXPECT_THROW(auc(mismatch), DimensionError);
}

TEST(Auc, UnlabeledEntriesIgnored) {
  auto s = labeled({1.0, 2.0}, {3.0});
  s.scores.push_back(100.0);
  s.labels.push_back(Label::unlabeled);
  EXPECT_EQ(auc(s), 1.0);
}

TEST(FalseAlarm, ThresholdAtMedianTarget) {
  const auto op = false_alarm_at_detection(labeled({1.0, 2.0, 3.0, 4.0}, {2.0, 3.0}), 0.5);
  EXPECT_EQ(op.threshold, 2.0);
  EXPECT_EQ(op.false_alarm_rate, 0.5);
}

TEST(FalseAlarm, PerfectSeparationIsZero) {
  const auto op = false_alarm_at_detection(labeled({0.0, 0.1}, {1.0, 2.0, 3.0}), 0.5);
  EXPECT_EQ(op.false_alarm_rate, 0.0);
  EXPECT_THROW(false_alarm_at_detection(labeled({0.0}, {1.0}), 0.0), ValidationError);
  EXPECT_THROW(false_alarm_at_detection(labeled({0.0}, {1.0}), 1.5), ValidationError);
}

TEST(FalseAlarm, InterpolatedCurveAgreesWithinOneStep) {
  std::mt19937_64 rng(35);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> b(4000), t(1000);
  for (auto& v : b) v = n(rng);
  for (auto& v : t) v = n(rng) + 1.0;
  const auto set = labeled(b, t);
  const double exact = false_alarm_at_detection(set, 0.5).false_alarm_rate;
  const auto curve = roc(set);
  const double interp = interpolate_false_alarm(curve, 0.5);
  // One empirical step: the FAR spanned by ROC points within one target of 0.5.
  double lo = 1.0, hi = 0.0;
  for (const auto& p : curve.points) {
    if (std::abs(p.detection_rate - 0.5) <= 1.0 / t.size() + 1e-12) {
      lo = std::min(lo, p.false_alarm_rate);
      hi = std::max(hi, p.false_alarm_rate);
    }
  }
  EXPECT_LE(hi - lo, 0.01);
  EXPECT_NEAR(interp, exact, hi - lo + 1e-12);
}

TEST(Roc, EndpointsAndMonotone) {
  const auto curve = roc(labeled({1.0, 2.0, 2.0, 5.0}, {2.0, 3.0, 6.0}));
  ASSERT_GE(curve.points.size(), 2u);
  EXPECT_EQ(curve.points.front().false_alarm_rate, 0.0);
  EXPECT_EQ(curve.points.front().detection_rate, 0.0);
  EXPECT_EQ(curve.points.back().false_alarm_rate, 1.0);
  EXPECT_EQ(curve.points.back().detection_rate, 1.0);
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    EXPECT_GE(curve.points[i].false_alarm_rate, curve.points[i - 1].false_alarm_rate);
    EXPECT_GE(curve.points[i].detection_rate, curve.points[i - 1].detection_rate);
  }
  // Trapezoid area equals the rank statistic.
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i - 1];
    const auto& q = curve.points[i];
    area += (q.false_alarm_rate - p.false_alarm_rate) * 0.5 * (p.detection_rate + q.detection_rate);
  }
  EXPECT_NEAR(area, curve.auc, 1e-15);
}

TEST(Spearman, HandlesTiesAndMonotoneMaps) {
  const std::vector<double> a{1.0, 2.0, 2.0, 4.0, 5.0};
  EXPECT_EQ(ranks(a), (std::vector<double>{1.0, 2.5, 2.5, 4.0, 5.0}));
  std::vector<double> b(a.size());
  std::transform(a.begin(), a.end(), b.begin(), [](double v) { return std::exp(v); });
  EXPECT_NEAR(spearman(a, b), 1.0, 1e-15);
  std::transform(a.begin(), a.end(), b.begin(), [](double v) { return -v; });
  EXPECT_NEAR(spearman(a, b), -1.0, 1e-15);
  EXPECT_THROW(spearman(a, std::vector<double>{1.0}), DimensionError);
}
