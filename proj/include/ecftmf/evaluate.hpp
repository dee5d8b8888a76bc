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

#include <span>
#include <vector>

#include "ecftmf/detectors.hpp"
#include "ecftmf/score_set.hpp"

namespace ecftmf::eval {

/// Matched-filter / residual coordinates of a whitened pixel.
struct MfrPoint {
  double mf = 0.0;
  double residual = 0.0;
};

/// mf = tᵀx/T, residual = √(xᵀx − mf²) with the radicand clamped at 0.
/// Both x and t must already be in whitened coordinates.
MfrPoint mfr_project(std::span<const double> x, std::span<const double> target);
MfrPoint mfr_project(std::span<const double> x, const detect::TargetSpec& target);

struct RocPoint {
  double false_alarm_rate = 0.0;
  double detection_rate = 0.0;
};

struct RocCurve {
  /// From (0,0) to (1,1); one point per distinct score, highest first.
  std::vector<RocPoint> points;
  /// Mann–Whitney statistic, ties counted half.
  double auc = 0.0;
};

/// Sweeps thresholds over the distinct scores; tied scores cross together.
/// Unlabeled entries are ignored. Throws ValidationError unless both labels
/// are present and all scores are finite.
RocCurve roc(const ScoreSet& scores);

/// P(target > background) + ½·P(tie), counted exactly.
double auc(const ScoreSet& scores);

struct OperatingPoint {
  double threshold = 0.0;
  double false_alarm_rate = 0.0;
};

/// Threshold at the empirical (1 − detection_rate) quantile of target
/// scores: the k-th smallest with k = ⌈(1 − rate)·n_t⌉, i.e. the lower order
/// statistic when the quantile falls between two. The false-alarm rate is
/// the fraction of background scores strictly above it.
OperatingPoint false_alarm_at_detection(const ScoreSet& scores, double detection_rate);

/// Linear interpolation of the curve's false-alarm rate at a detection rate.
double interpolate_false_alarm(const RocCurve& curve, double detection_rate);

/// Midranks (1-based, ties averaged).
std::vector<double> ranks(std::span<const double> values);

/// Spearman rank correlation with midrank tie handling.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace ecftmf::eval
