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
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ecftmf/core_stats.hpp"
#include "ecftmf/score_set.hpp"

/// CSV files exchanged by the command-line tool. Numbers are written in the
/// shortest form that round-trips exactly, so reruns are byte-identical.
namespace ecftmf::cli {

inline constexpr std::string_view kScoresHeader = "pixel,label,detector,score,alpha_hat,mf,residual";
inline constexpr std::string_view kMetricsHeader = "detector,auc,far_at_pd50,threshold";
inline constexpr std::string_view kRocHeader = "detector,false_alarm_rate,detection_rate";

std::string format_double(double v);

std::string_view label_name(Label label) noexcept;
Label parse_label(std::string_view text);

/// Header "c0,c1,...", one row per pixel.
void write_matrix_csv(const std::filesystem::path& path, const DataMatrix& m);
DataMatrix read_matrix_csv(const std::filesystem::path& path);

struct ScoreRow {
  std::size_t pixel = 0;
  Label label = Label::unlabeled;
  std::string detector;
  double score = 0.0;
  std::optional<double> alpha_hat;
  double mf = 0.0;
  double residual = 0.0;
};

void write_score_row(std::ostream& out, const ScoreRow& row);
std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path);

struct MetricsRow {
  std::string detector;
  double auc = 0.0;
  double far_at_pd50 = 0.0;
  double threshold = 0.0;
};

void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string_view> split_fields(std::string_view line);

}  // namespace ecftmf::cli
