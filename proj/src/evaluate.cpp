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

#include "ecftmf/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "ecftmf/error.hpp"
#include "ecftmf/simd/kernels.hpp"

namespace ecftmf::eval {
namespace {

struct Split {
  std::vector<double> background;
  std::vector<double> target;
};

Split split_labeled(const ScoreSet& set) {
  if (set.scores.size() != set.labels.size()) {
    throw DimensionError("score set: " + std::to_string(set.scores.size()) + " scores but " +
                         std::to_string(set.labels.size()) + " labels");
  }
  Split s;
  for (std::size_t i = 0; i < set.scores.size(); ++i) {
    const double v = set.scores[i];
    if (!std::isfinite(v)) {
      throw ValidationError("score " + std::to_string(i) + " is not finite", "score");
    }
    if (set.labels[i] == Label::background) s.background.push_back(v);
    if (set.labels[i] == Label::target) s.target.push_back(v);
  }
  if (s.background.empty() || s.target.empty()) {
    throw ValidationError("evaluation needs at least one background and one target score", "label");
  }
  return s;
}

double mann_whitney(std::vector<double> background, std::span<const double> target) {
  std::sort(background.begin(), background.end());
  // Twice the win count plus ties, in integers so the ratio is exact.
  std::uint64_t doubled = 0;
  for (double s : target) {
    auto lo = std::lower_bound(background.begin(), background.end(), s);
    auto hi = std::upper_bound(lo, background.end(), s);
    doubled += 2 * static_cast<std::uint64_t>(lo - background.begin()) + static_cast<std::uint64_t>(hi - lo);
  }
  const double pairs = static_cast<double>(background.size()) * static_cast<double>(target.size());
  return static_cast<double>(doubled) / (2.0 * pairs);
}

}  // namespace

MfrPoint mfr_project(std::span<const double> x, std::span<const double> target) {
  if (x.size() != target.size()) throw DimensionError("mfr_project: dimension mismatch");
  const double magnitude = std::sqrt(simd::squared_norm(target));
  if (!(magnitude > 0.0)) throw ValidationError("target magnitude must be > 0", "T");
  MfrPoint p;
  p.mf = simd::dot(target, x) / magnitude;
  p.residual = std::sqrt(std::max(simd::squared_norm(x) - p.mf * p.mf, 0.0));
  return p;
}

MfrPoint mfr_project(std::span<const double> x, const detect::TargetSpec& target) {
  return mfr_project(x, target.signature);
}

double auc(const ScoreSet& scores) {
  Split s = split_labeled(scores);
  return mann_whitney(std::move(s.background), s.target);
}

RocCurve roc(const ScoreSet& set) {
  Split s = split_labeled(set);
  const double nb = static_cast<double>(s.background.size());
  const double nt = static_cast<double>(s.target.size());

  struct Entry {
    double score;
    bool target;
  };
  std::vector<Entry> pooled;
  pooled.reserve(s.background.size() + s.target.size());
  for (double v : s.background) pooled.push_back({v, false});
  for (double v : s.target) pooled.push_back({v, true});
  std::sort(pooled.begin(), pooled.end(), [](const Entry& a, const Entry& b) { return a.score > b.score; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::size_t fa = 0;
  std::size_t det = 0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    for (; j < pooled.size() && pooled[j].score == pooled[i].score; ++j) {
      (pooled[j].target ? det : fa) += 1;
    }
    curve.points.push_back({static_cast<double>(fa) / nb, static_cast<double>(det) / nt});
    i = j;
  }
  curve.auc = mann_whitney(std::move(s.background), s.target);
  return curve;
}

OperatingPoint false_alarm_at_detection(const ScoreSet& set, double detection_rate) {
  if (!(detection_rate > 0.0 && detection_rate < 1.0)) {
    throw ValidationError("detection rate must lie in (0, 1)", "detection_rate");
  }
  Split s = split_labeled(set);
  std::sort(s.target.begin(), s.target.end());
  const double nt = static_cast<double>(s.target.size());
  // Small slack so e.g. (1 − 0.9)·10 lands on 1, not 2.
  const double pos = std::ceil((1.0 - detection_rate) * nt - 1e-9);
  const std::size_t k = static_cast<std::size_t>(std::clamp(pos, 1.0, nt));

  OperatingPoint op;
  op.threshold = s.target[k - 1];
  const auto above = std::count_if(s.background.begin(), s.background.end(),
                                   [&](double v) { return v > op.threshold; });
  op.false_alarm_rate = static_cast<double>(above) / static_cast<double>(s.background.size());
  return op;
}

double interpolate_false_alarm(const RocCurve& curve, double detection_rate) {
  const auto& pts = curve.points;
  if (pts.empty()) throw ValidationError("empty ROC curve", "roc");
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].detection_rate >= detection_rate) {
      const RocPoint& a = pts[i - 1];
      const RocPoint& b = pts[i];
      const double span = b.detection_rate - a.detection_rate;
      if (span <= 0.0) return b.false_alarm_rate;
      const double w = (detection_rate - a.detection_rate) / span;
      return a.false_alarm_rate + w * (b.false_alarm_rate - a.false_alarm_rate);
    }
  }
  return pts.back().false_alarm_rate;
}

std::vector<double> ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) out[order[k]] = mid;
    i = j;
  }
  return out;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("spearman: length mismatch");
  if (a.size() < 2) throw ValidationError("spearman needs at least two points", "n");
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = 0.5 * (n + 1.0);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean;
    const double db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace ecftmf::eval
