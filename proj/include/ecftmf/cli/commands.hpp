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

#include <filesystem>
#include <optional>
#include <vector>

#include "ecftmf/cli/config.hpp"
#include "ecftmf/cli/csv.hpp"
#include "ecftmf/cli/manifest.hpp"

/// Batch commands behind the `ecftmf` tool. A run directory holds
///   background.csv  n×d background pixels
///   targets.csv     n×d matched replacement-model targets
///   target.csv      1×d target signature
///   manifest.json   configuration, checksums, scoring record
namespace ecftmf::cli {

inline constexpr const char* kBackgroundFile = "background.csv";
inline constexpr const char* kTargetsFile = "targets.csv";
inline constexpr const char* kSignatureFile = "target.csv";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kScoresFile = "scores.csv";
inline constexpr const char* kMetricsFile = "metrics.csv";

/// Generates the dataset for `config` into `out_dir` (created if missing).
RunManifest cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir);

struct ScoreOptions {
  std::filesystem::path dataset;
  std::optional<std::vector<detect::DetectorKind>> detectors;  // default: manifest list
  std::optional<double> nu;                                    // override
  bool estimate_nu = false;
  std::optional<std::filesystem::path> out;                    // default: <dataset>/scores.csv
};

/// Scores every background and target pixel of a simulated run with each
/// detector and records what was done in the run manifest. Pixels are
/// numbered background 0..n−1, then targets n..2n−1.
ScoreRecord cmd_score(const ScoreOptions& options);

struct MatrixScoreOptions {
  std::filesystem::path matrix;
  std::filesystem::path signature;
  /// Data are already de-meaned and whitened; skip covariance estimation.
  bool whitened = false;
  std::optional<double> nu;
  bool estimate_nu = false;
  double ridge = 0.0;
  std::vector<detect::DetectorKind> detectors{detect::kAllDetectors.begin(), detect::kAllDetectors.end()};
  std::filesystem::path out;
};

/// Real-data path: estimates the background from the matrix itself (unless
/// whitened) and scores every row; labels are written as "unlabeled".
ScoreRecord cmd_score_matrix(const MatrixScoreOptions& options);

struct EvaluateOptions {
  std::filesystem::path scores;
  std::filesystem::path out;
  std::optional<std::filesystem::path> roc_out;
};

/// Per-detector AUC and false-alarm rate at detection rate 0.5, in order of
/// first appearance in the scores file.
std::vector<MetricsRow> cmd_evaluate(const EvaluateOptions& options);

}  // namespace ecftmf::cli
