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
#include <optional>
#include <span>
#include <vector>

#include "ecftmf/core_stats.hpp"
#include "ecftmf/detector_kind.hpp"
#include "ecftmf/error.hpp"
#include "ecftmf/mvt.hpp"
#include "ecftmf/score_set.hpp"

/// The six-detector taxonomy.
///
/// Additive model x = z + αt:
///   AMF     tᵀR⁻¹(x−µ)
///   EC-AMF  √(ν−1)·tᵀR⁻¹(x−µ) / √((ν−2) + (x−µ)ᵀR⁻¹(x−µ))
///   ACE     tᵀR⁻¹(x−µ) / √((x−µ)ᵀR⁻¹(x−µ))
///
/// Replacement model x = (1−α)z + αt, scored by the GLRT
///   D(x) = log pₓ(x|α̂) − log pₓ(x|0),  pₓ(x|α) = (1−α)^(−d)·p_z((x−αt)/(1−α)),
/// with α̂ the closed-form maximizer. FTMF, EC-FTMF and FTCE are the ν→∞,
/// finite-ν and ν→2 cases.
namespace ecftmf::detect {

/// Largest fill fraction used when scoring; α̂ is capped at 1 − kAlphaCap.
inline constexpr double kAlphaCap = 1e-9;

struct TargetSpec {
  std::vector<double> signature;

  std::size_t dim() const noexcept { return signature.size(); }
  /// Euclidean norm of the signature.
  double magnitude() const;
};

/// Quadratic forms of one pixel against the model and target. All detector
/// statistics are functions of these five numbers.
struct PixelForms {
  double target_sq = 0.0;      // a  = (t−µ)ᵀR⁻¹(t−µ)
  double cross = 0.0;          // b  = (x−t)ᵀR⁻¹(t−µ)
  double residual_sq = 0.0;    // c  = (x−t)ᵀR⁻¹(x−t)
  double radius_sq = 0.0;      // m₀ = (x−µ)ᵀR⁻¹(x−µ)
  double matched_filter = 0.0; // p  = tᵀR⁻¹(x−µ)
};

/// Closed-form ML fill fraction.
///
/// The stationarity condition of log pₓ(x|α) in u = 1−α is A·u² + B·u + C = 0
/// with A = a + (ν−2), B = (1−ν/d)·b, C = −(ν/d)·c; u = (−B + √(B²−4AC))/(2A).
/// For ν = ∞ the coefficients are divided through by A.
struct AlphaSolution {
  double alpha_hat = 0.0;            // clamp(raw_root, 0, 1)
  double raw_root = 0.0;             // unclamped stationary point in α
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double background_fraction = 1.0;  // 1 − α̂ used for scoring, in [kAlphaCap, 1]
};

/// Root for ν ∈ [2, ∞]. Throws NumericalError when ν = 2 and a = 0.
AlphaSolution solve_alpha(const PixelForms& forms, std::size_t d, double nu);

/// GLRT log-ratio at the capped α̂, ν ∈ [2, ∞] (ν = 2 is the FTCE limit).
/// Returns 0 when α̂ clamps to 0.
double replacement_statistic(const PixelForms& forms, const AlphaSolution& alpha, std::size_t d,
                             double nu);

/// EC-AMF for ν ∈ [2, ∞]; ν = ∞ gives AMF.
double ec_amf_statistic(const PixelForms& forms, double nu);
double ace_statistic(const PixelForms& forms);

struct DetectorOutput {
  double score = 0.0;
  std::optional<double> alpha_hat;  // replacement detectors only
};

/// Precomputes the whitened target for one (model, target) pair and scores
/// pixels against it. Immutable; safe to share across threads.
class Scorer {
 public:
  Scorer(const mvt::BackgroundModel& model, TargetSpec target);

  const mvt::BackgroundModel& model() const noexcept { return model_; }
  const TargetSpec& target() const noexcept { return target_; }
  std::size_t dim() const noexcept { return model_.dim(); }

  /// L⁻¹(t−µ).
  std::span<const double> whitened_target() const noexcept { return whitened_offset_; }

  PixelForms forms(std::span<const double> x) const;
  /// Same, also writing L⁻¹(x−µ) into `whitened`.
  PixelForms forms(std::span<const double> x, std::span<double> whitened) const;

  /// ν the detector kind runs at: ∞, the model's ν, or 2.
  double nu_for(DetectorKind kind) const;

  /// α̂ for the given tail assumption.
  AlphaSolution alpha_ml(std::span<const double> x, Tail tail) const;
  AlphaSolution alpha_ml(const PixelForms& forms, Tail tail) const;

  DetectorOutput evaluate(const PixelForms& forms, DetectorKind kind) const;
  double score(std::span<const double> x, DetectorKind kind) const;

 private:
  void require_general_nu() const;

  mvt::BackgroundModel model_;
  TargetSpec target_;
  std::vector<double> whitened_signature_;  // L⁻¹t
  std::vector<double> whitened_offset_;     // L⁻¹(t−µ)
  double target_sq_ = 0.0;
};

/// α̂ with the branch picked from the model: Gaussian when ν = ∞, general
/// otherwise.
AlphaSolution alpha_ml(std::span<const double> x, const mvt::BackgroundModel& model,
                       const TargetSpec& target);
AlphaSolution alpha_ml(std::span<const double> x, const mvt::BackgroundModel& model,
                       const TargetSpec& target, Tail tail);

/// log pₓ(x|α) = −d·log(1−α) + log p_z((x−αt)/(1−α)) under the model.
/// Requires 0 ≤ α < 1.
double log_likelihood_alpha(std::span<const double> x, const mvt::BackgroundModel& model,
                            const TargetSpec& target, double alpha);

double score(std::span<const double> x, const mvt::BackgroundModel& model, const TargetSpec& target,
             DetectorKind kind);

/// Failure while scoring one row of a batch.
class BatchError : public Error {
 public:
  BatchError(std::size_t row, const Error& cause)
      : Error(cause.kind(), "row " + std::to_string(row) + ": " + cause.what()), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Scores each row in order. `labels` may be empty (all unlabeled) or one
/// per row.
ScoreSet score_batch(const DataMatrix& data, const mvt::BackgroundModel& model, const TargetSpec& target,
                     DetectorKind kind, std::span<const Label> labels = {});

}  // namespace ecftmf::detect
