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

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ecftmf::detect {

/// Target-background interaction the detector assumes.
enum class Family { additive, replacement };

/// Background tail assumption: Gaussian (ν→∞), multivariate t with the
/// model's ν, or the heavy-tailed ν→2 limit.
enum class Tail { gaussian, general, heavy };

struct DetectorKind {
  Family family;
  Tail tail;

  /// "AMF", "EC-AMF", "ACE", "FTMF", "EC-FTMF" or "FTCE".
  std::string_view name() const noexcept;

  friend constexpr bool operator==(DetectorKind, DetectorKind) = default;
};

inline constexpr DetectorKind kAmf{Family::additive, Tail::gaussian};
inline constexpr DetectorKind kEcAmf{Family::additive, Tail::general};
inline constexpr DetectorKind kAce{Family::additive, Tail::heavy};
inline constexpr DetectorKind kFtmf{Family::replacement, Tail::gaussian};
inline constexpr DetectorKind kEcFtmf{Family::replacement, Tail::general};
inline constexpr DetectorKind kFtce{Family::replacement, Tail::heavy};

/// All six detectors, additive row first.
inline constexpr std::array<DetectorKind, 6> kAllDetectors{kAmf, kEcAmf, kAce, kFtmf, kEcFtmf, kFtce};

/// Throws ValidationError("detectors") for unknown names.
DetectorKind parse_detector(std::string_view name);

/// Comma-separated list, e.g. "AMF,ACE,EC-FTMF". Whitespace around names is
/// ignored; duplicates are rejected.
std::vector<DetectorKind> parse_detector_list(std::string_view list);

std::string format_detector_list(std::span<const DetectorKind> kinds);

}  // namespace ecftmf::detect
