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

#include "ecftmf/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ecftmf/cli/csv.hpp"
#include "ecftmf/error.hpp"

namespace ecftmf::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

double parse_double(std::string_view text, std::string_view field) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("field '" + std::string(field) + "': cannot parse '" + std::string(text) +
                              "' as a number",
                          std::string(field));
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view field) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("field '" + std::string(field) + "': cannot parse '" + std::string(text) +
                              "' as a non-negative integer",
                          std::string(field));
  }
  return value;
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ValidationError("config line " + std::to_string(line_no) + ": key '" + key + "' repeated", key);
    }

    auto& sc = cfg.scenario;
    if (key == "nu") {
      sc.nu = parse_double(value, key);
    } else if (key == "d") {
      sc.d = parse_uint(value, key);
    } else if (key == "T") {
      sc.magnitude = parse_double(value, key);
    } else if (key == "alpha") {
      sc.alpha = parse_double(value, key);
    } else if (key == "n") {
      sc.n = parse_uint(value, key);
    } else if (key == "seed") {
      sc.seed = parse_uint(value, key);
    } else if (key == "detectors") {
      cfg.detectors = detect::parse_detector_list(value);
    } else if (key == "outputs") {
      if (value.empty()) throw ValidationError("config: 'outputs' must not be empty", key);
      cfg.outputs = std::string(value);
    } else {
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'", key);
    }
  }
  for (const char* required : {"nu", "d", "T", "alpha", "n", "seed"}) {
    if (!seen.contains(required)) {
      throw ValidationError(std::string("config: missing required key '") + required + "'", required);
    }
  }
  cfg.scenario.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& config) {
  const auto& sc = config.scenario;
  std::string out;
  out += "nu = " + format_double(sc.nu) + "\n";
  out += "d = " + std::to_string(sc.d) + "\n";
  out += "T = " + format_double(sc.magnitude) + "\n";
  out += "alpha = " + format_double(sc.alpha) + "\n";
  out += "n = " + std::to_string(sc.n) + "\n";
  out += "seed = " + std::to_string(sc.seed) + "\n";
  out += "detectors = " + detect::format_detector_list(config.detectors) + "\n";
  out += "outputs = " + config.outputs + "\n";
  return out;
}

}  // namespace ecftmf::cli
