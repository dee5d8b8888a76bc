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

#include <vector>

#include "ecftmf/detector_kind.hpp"

namespace ecftmf {

enum class Label { background, target, unlabeled };

/// Per-pixel detector scores with their ground-truth labels.
struct ScoreSet {
  std::vector<double> scores;
  std::vector<Label> labels;
  detect::DetectorKind detector = detect::kAmf;
};

}  // namespace ecftmf
