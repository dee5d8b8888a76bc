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

#include "ecftmf/cli/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "ecftmf/cli/config.hpp"
#include "ecftmf/error.hpp"

namespace ecftmf::cli {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

[[noreturn]] void malformed(const std::filesystem::path& path, std::size_t line_no, const std::string& why) {
  throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": " + why, "csv");
}

double field_double(std::string_view text, const std::filesystem::path& path, std::size_t line_no,
                    std::string_view column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    malformed(path, line_no, "bad " + std::string(column) + " value '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string_view label_name(Label label) noexcept {
  switch (label) {
    case Label::background: return "background";
    case Label::target: return "target";
    case Label::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

Label parse_label(std::string_view text) {
  if (text == "background") return Label::background;
  if (text == "target") return Label::target;
  if (text == "unlabeled") return Label::unlabeled;
  throw ValidationError("unknown label '" + std::string(text) + "'", "label");
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

void write_matrix_csv(const std::filesystem::path& path, const DataMatrix& m) {
  auto out = open_out(path);
  for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ",c" : "c") << c;
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << format_double(row[c]);
    }
    out << '\n';
  }
  finish(out, path);
}

DataMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line)) malformed(path, 1, "missing header");
  const std::size_t cols = split_fields(line).size();
  for (std::size_t c = 0; const auto& name : split_fields(line)) {
    if (name != "c" + std::to_string(c++)) malformed(path, 1, "header must be c0,c1,...");
  }

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != cols) {
      malformed(path, line_no, "expected " + std::to_string(cols) + " fields, got " + std::to_string(fields.size()));
    }
    for (const auto& f : fields) values.push_back(field_double(f, path, line_no, "matrix"));
    ++rows;
  }
  if (rows == 0) malformed(path, line_no, "no data rows");
  return DataMatrix(rows, cols, std::move(values));
}

void write_score_row(std::ostream& out, const ScoreRow& row) {
  out << row.pixel << ',' << label_name(row.label) << ',' << row.detector << ',' << format_double(row.score)
      << ',';
  if (row.alpha_hat) out << format_double(*row.alpha_hat);
  out << ',' << format_double(row.mf) << ',' << format_double(row.residual) << '\n';
}

std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line) || line != kScoresHeader) {
    malformed(path, 1, "header must be '" + std::string(kScoresHeader) + "'");
  }
  std::vector<ScoreRow> rows;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7) malformed(path, line_no, "expected 7 fields, got " + std::to_string(f.size()));
    ScoreRow row;
    try {
      row.pixel = parse_uint(f[0], "pixel");
      row.label = parse_label(f[1]);
    } catch (const ValidationError& e) {
      malformed(path, line_no, e.what());
    }
    if (f[2].empty()) malformed(path, line_no, "empty detector name");
    row.detector = std::string(f[2]);
    row.score = field_double(f[3], path, line_no, "score");
    if (!f[4].empty()) row.alpha_hat = field_double(f[4], path, line_no, "alpha_hat");
    row.mf = field_double(f[5], path, line_no, "mf");
    row.residual = field_double(f[6], path, line_no, "residual");
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_metrics_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows) {
  auto out = open_out(path);
  out << kMetricsHeader << '\n';
  for (const auto& r : rows) {
    out << r.detector << ',' << format_double(r.auc) << ',' << format_double(r.far_at_pd50) << ','
        << format_double(r.threshold) << '\n';
  }
  finish(out, path);
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!next_line(in, line) || line != kMetricsHeader) {
    malformed(path, 1, "header must be '" + std::string(kMetricsHeader) + "'");
  }
  std::vector<MetricsRow> rows;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 4) malformed(path, line_no, "expected 4 fields, got " + std::to_string(f.size()));
    rows.push_back({std::string(f[0]), field_double(f[1], path, line_no, "auc"),
                    field_double(f[2], path, line_no, "far_at_pd50"),
                    field_double(f[3], path, line_no, "threshold")});
  }
  return rows;
}

}  // namespace ecftmf::cli
