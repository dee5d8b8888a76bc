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

#include "ecftmf/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ecftmf/simd/kernels.hpp"

namespace ecftmf::detect {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_detector_nu(double nu) {
  if (std::isnan(nu) || nu < 2.0) {
    throw ValidationError("detector nu must lie in [2, inf], got " + std::to_string(nu), "nu");
  }
}

}  // namespace

std::string_view DetectorKind::name() const noexcept {
  if (family == Family::additive) {
    switch (tail) {
      case Tail::gaussian: return "AMF";
      case Tail::general: return "EC-AMF";
      case Tail::heavy: return "ACE";
    }
  } else {
    switch (tail) {
      case Tail::gaussian: return "FTMF";
      case Tail::general: return "EC-FTMF";
      case Tail::heavy: return "FTCE";
    }
  }
  return "?";
}

DetectorKind parse_detector(std::string_view name) {
  for (DetectorKind kind : kAllDetectors) {
    if (kind.name() == name) return kind;
  }
  throw ValidationError("unknown detector '" + std::string(name) +
                            "' (expected AMF, EC-AMF, ACE, FTMF, EC-FTMF or FTCE)",
                        "detectors");
}

std::vector<DetectorKind> parse_detector_list(std::string_view list) {
  std::vector<DetectorKind> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos) comma = list.size();
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    const DetectorKind kind = parse_detector(item);
    if (std::find(out.begin(), out.end(), kind) != out.end()) {
      throw ValidationError("detector '" + std::string(item) + "' listed twice", "detectors");
    }
    out.push_back(kind);
    pos = comma + 1;
  }
  return out;
}

std::string format_detector_list(std::span<const DetectorKind> kinds) {
  std::string out;
  for (DetectorKind kind : kinds) {
    if (!out.empty()) out += ',';
    out += kind.name();
  }
  return out;
}

double TargetSpec::magnitude() const { return std::sqrt(simd::squared_norm(signature)); }

AlphaSolution solve_alpha(const PixelForms& forms, std::size_t d, double nu) {
  require_detector_nu(nu);
  const double dd = static_cast<double>(d);
  AlphaSolution sol;
  if (nu == kInf) {
    // Only the ratios B/A and C/A survive the ν→∞ limit.
    sol.A = 1.0;
    sol.B = -forms.cross / dd;
    sol.C = -forms.residual_sq / dd;
  } else {
    sol.A = forms.target_sq + (nu - 2.0);
    sol.B = (1.0 - nu / dd) * forms.cross;
    sol.C = -(nu / dd) * forms.residual_sq;
  }
  if (!(sol.A > 0.0)) {
    throw NumericalError("degenerate quadratic for the fill fraction: target coincides with the background mean");
  }

  // C ≤ 0 and A > 0, so the discriminant is at least B².
  const double root_disc = std::sqrt(sol.B * sol.B - 4.0 * sol.A * sol.C);
  double u;
  if (sol.B >= 0.0) {
    // Same root as (−B + √disc)/(2A), written without cancellation.
    const double denom = sol.B + root_disc;
    u = denom > 0.0 ? (-2.0 * sol.C) / denom : 0.0;
  } else {
    u = (-sol.B + root_disc) / (2.0 * sol.A);
  }

  sol.raw_root = 1.0 - u;
  sol.alpha_hat = std::clamp(sol.raw_root, 0.0, 1.0);
  sol.background_fraction = std::clamp(u, kAlphaCap, 1.0);
  return sol;
}

double replacement_statistic(const PixelForms& forms, const AlphaSolution& alpha, std::size_t d,
                             double nu) {
  require_detector_nu(nu);
  const double m0 = forms.radius_sq;
  if (nu == 2.0 && !(m0 > 0.0)) {
    throw NumericalError("FTCE is undefined at the background mean (zero Mahalanobis radius)");
  }
  const double u = alpha.background_fraction;
  if (u >= 1.0) return 0.0;

  const double dd = static_cast<double>(d);
  // wᵀR⁻¹w/u², with w = (x−µ) − α(t−µ) = (x−t) + u(t−µ).
  const double q = std::max((forms.residual_sq / u + 2.0 * forms.cross) / u + forms.target_sq, 0.0);
  const double jacobian = -dd * std::log(u);

  double stat;
  if (nu == kInf) {
    stat = jacobian - 0.5 * (q - m0);
  } else if (nu == 2.0) {
    // Heavy-tail limit: the (ν−2) terms cancel between numerator and null.
    // q = 0 only when x lies exactly on the µ–t segment; keep the ratio finite.
    const double ratio = std::max(q, std::numeric_limits<double>::min()) / m0;
    stat = jacobian - 0.5 * (dd + 2.0) * std::log(ratio);
  } else {
    stat = jacobian - 0.5 * (dd + nu) * std::log1p((q - m0) / ((nu - 2.0) + m0));
  }
  // α = 0 is feasible, so the maximized log-ratio is never below zero.
  return std::max(stat, 0.0);
}

double ec_amf_statistic(const PixelForms& forms, double nu) {
  require_detector_nu(nu);
  if (nu == kInf) return forms.matched_filter;
  const double denom = (nu - 2.0) + forms.radius_sq;
  if (!(denom > 0.0)) return 0.0;
  return std::sqrt(nu - 1.0) * forms.matched_filter / std::sqrt(denom);
}

double ace_statistic(const PixelForms& forms) {
  if (!(forms.radius_sq > 0.0)) return 0.0;
  return forms.matched_filter / std::sqrt(forms.radius_sq);
}

Scorer::Scorer(const mvt::BackgroundModel& model, TargetSpec target)
    : model_(model), target_(std::move(target)) {
  const std::size_t d = model_.dim();
  if (target_.dim() != d) {
    throw DimensionError("target has " + std::to_string(target_.dim()) + " channels, model has " +
                         std::to_string(d));
  }
  whitened_signature_ = model_.cov().forward_solve(target_.signature);
  whitened_offset_.resize(d);
  whiten_into(target_.signature, model_.mu(), model_.cov(), whitened_offset_);
  target_sq_ = simd::squared_norm(whitened_offset_);
}

PixelForms Scorer::forms(std::span<const double> x) const {
  std::vector<double> whitened(dim());
  return forms(x, whitened);
}

PixelForms Scorer::forms(std::span<const double> x, std::span<double> whitened) const {
  if (x.size() != dim()) {
    throw DimensionError("pixel has " + std::to_string(x.size()) + " channels, model has " +
                         std::to_string(dim()));
  }
  whiten_into(x, model_.mu(), model_.cov(), whitened);
  std::vector<double> diff(dim());
  simd::subtract(whitened, whitened_offset_, diff);

  PixelForms f;
  f.target_sq = target_sq_;
  f.cross = simd::dot(diff, whitened_offset_);
  f.residual_sq = simd::squared_norm(diff);
  f.radius_sq = simd::squared_norm(whitened);
  f.matched_filter = simd::dot(whitened_signature_, whitened);
  return f;
}

double Scorer::nu_for(DetectorKind kind) const {
  switch (kind.tail) {
    case Tail::gaussian: return kInf;
    case Tail::heavy: return 2.0;
    case Tail::general: return model_.nu();
  }
  return model_.nu();
}

AlphaSolution Scorer::alpha_ml(std::span<const double> x, Tail tail) const {
  return alpha_ml(forms(x), tail);
}

AlphaSolution Scorer::alpha_ml(const PixelForms& f, Tail tail) const {
  return solve_alpha(f, dim(), nu_for(DetectorKind{Family::replacement, tail}));
}

DetectorOutput Scorer::evaluate(const PixelForms& f, DetectorKind kind) const {
  DetectorOutput out;
  const double nu = nu_for(kind);
  if (kind.family == Family::additive) {
    switch (kind.tail) {
      case Tail::gaussian: out.score = f.matched_filter; break;
      case Tail::general: out.score = ec_amf_statistic(f, nu); break;
      case Tail::heavy: out.score = ace_statistic(f); break;
    }
    return out;
  }
  if (kind.tail == Tail::heavy && !(f.radius_sq > 0.0)) {
    throw NumericalError("FTCE is undefined at the background mean (zero Mahalanobis radius)");
  }
  const AlphaSolution sol = solve_alpha(f, dim(), nu);
  out.score = replacement_statistic(f, sol, dim(), nu);
  out.alpha_hat = sol.alpha_hat;
  return out;
}

double Scorer::score(std::span<const double> x, DetectorKind kind) const {
  return evaluate(forms(x), kind).score;
}

AlphaSolution alpha_ml(std::span<const double> x, const mvt::BackgroundModel& model,
                       const TargetSpec& target) {
  return alpha_ml(x, model, target, model.gaussian() ? Tail::gaussian : Tail::general);
}

AlphaSolution alpha_ml(std::span<const double> x, const mvt::BackgroundModel& model,
                       const TargetSpec& target, Tail tail) {
  return Scorer(model, target).alpha_ml(x, tail);
}

double log_likelihood_alpha(std::span<const double> x, const mvt::BackgroundModel& model,
                            const TargetSpec& target, double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ValidationError("fill fraction must lie in [0, 1), got " + std::to_string(alpha), "alpha");
  }
  const std::size_t d = model.dim();
  if (x.size() != d || target.dim() != d) throw DimensionError("log_likelihood_alpha: dimension mismatch");
  std::vector<double> z(d);
  const double keep = 1.0 - alpha;
  for (std::size_t i = 0; i < d; ++i) z[i] = (x[i] - alpha * target.signature[i]) / keep;
  return -static_cast<double>(d) * std::log1p(-alpha) + mvt::log_density(z, model);
}

double score(std::span<const double> x, const mvt::BackgroundModel& model, const TargetSpec& target,
             DetectorKind kind) {
  return Scorer(model, target).score(x, kind);
}

ScoreSet score_batch(const DataMatrix& data, const mvt::BackgroundModel& model, const TargetSpec& target,
                     DetectorKind kind, std::span<const Label> labels) {
  if (!labels.empty() && labels.size() != data.rows()) {
    throw DimensionError("score_batch: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(data.rows()) + " rows");
  }
  const Scorer scorer(model, target);
  ScoreSet out;
  out.detector = kind;
  out.scores.reserve(data.rows());
  out.labels.assign(labels.begin(), labels.end());
  if (labels.empty()) out.labels.assign(data.rows(), Label::unlabeled);
  for (std::size_t r = 0; r < data.rows(); ++r) {
    try {
      out.scores.push_back(scorer.score(data.row(r), kind));
    } catch (const Error& e) {
      throw BatchError(r, e);
    }
  }
  return out;
}

}  // namespace ecftmf::detect
