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
#include <string>
#include <string_view>
#include <vector>

#include "ecftmf/detector_kind.hpp"
#include "ecftmf/simulate.hpp"

namespace ecftmf::cli {

/// Contents of a run configuration file.
///
/// Flat "key = value" lines; '#' starts a comment. Keys: nu, d, T, alpha,
/// n, seed (required), detectors (comma list, default all six) and outputs
/// (output directory, default "run"). Unknown or repeated keys are errors.
struct RunConfig {
  sim::ScenarioConfig scenario;
  std::vector<detect::DetectorKind> detectors{detect::kAllDetectors.begin(), detect::kAllDetectors.end()};
  std::string outputs = "run";
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);
std::string format_config(const RunConfig& config);

/// Strict numeric parsers; throw ValidationError naming `field`.
double parse_double(std::string_view text, std::string_view field);
std::uint64_t parse_uint(std::string_view text, std::string_view field);

}  // namespace ecftmf::cli
