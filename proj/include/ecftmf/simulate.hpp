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
#include <cstdint>

#include "ecftmf/core_stats.hpp"
#include "ecftmf/detectors.hpp"
#include "ecftmf/mvt.hpp"

/// Matched-pair Monte-Carlo scenarios in whitened coordinates: background
/// pixels from a zero-mean, identity-covariance multivariate t, and one
/// replacement-model target pixel per background pixel.
namespace ecftmf::sim {

struct ScenarioConfig {
  double nu = 10.0;
  std::size_t d = 10;
  double magnitude = 3.0;  // T
  double alpha = 0.5;
  std::size_t n = 10000;
  std::uint64_t seed = 0;

  /// Throws ValidationError naming the first bad field.
  void validate() const;
};

struct LabeledDataset {
  DataMatrix background;
  /// targets.row(i) = (1−α)·background.row(i) + α·t
  DataMatrix targets;
  detect::TargetSpec target_spec;
  ScenarioConfig config;
};

/// T·e₁.
detect::TargetSpec make_target(std::size_t d, double magnitude);

/// The background model a scenario samples from.
mvt::BackgroundModel scenario_model(const ScenarioConfig& config);

/// Deterministic in config.seed. The random stream feeds only the
/// background draw; implantation consumes nothing.
LabeledDataset generate(const ScenarioConfig& config);

/// Replacement-model implant, row by row.
DataMatrix implant(const DataMatrix& background, const detect::TargetSpec& target, double alpha);

}  // namespace ecftmf::sim
