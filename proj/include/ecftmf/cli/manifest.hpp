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
#include <string>
#include <utility>
#include <vector>

#include "ecftmf/cli/config.hpp"

namespace ecftmf::cli {

/// What a `score` invocation did, recorded back into the run manifest.
struct ScoreRecord {
  std::vector<detect::DetectorKind> detectors;
  double nu = 0.0;           // ν the detectors ran with
  std::string nu_source;     // "config", "override" or "estimate"
  std::optional<double> nu_estimate;
  std::optional<double> kappa;
  std::string scores_file;
  std::string scores_sha256;
};

/// manifest.json of a run directory.
struct RunManifest {
  std::string tool = "ecftmf";
  std::string version = ECFTMF_VERSION;
  std::string isa;
  RunConfig config;
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name, SHA-256
  std::optional<ScoreRecord> score;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace ecftmf::cli
