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

#include "ecftmf/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <fstream>
#include <memory>

#include "ecftmf/cli/csv.hpp"
#include "ecftmf/error.hpp"
#include "json.hpp"

namespace ecftmf::cli {
namespace {

using nlohmann::ordered_json;

// JSON has no infinity; ν = ∞ is written as the string "inf".
ordered_json nu_to_json(double nu) {
  if (std::isinf(nu)) return "inf";
  return nu;
}

double nu_from_json(const ordered_json& j) {
  if (j.is_string()) return parse_double(j.get<std::string>(), "nu");
  return j.get<double>();
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("SHA-256 init failed");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  const auto& sc = m.config.scenario;
  ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["isa"] = m.isa;
  j["config"] = {{"nu", nu_to_json(sc.nu)},
                 {"d", sc.d},
                 {"T", sc.magnitude},
                 {"alpha", sc.alpha},
                 {"n", sc.n},
                 {"seed", sc.seed},
                 {"detectors", detect::format_detector_list(m.config.detectors)},
                 {"outputs", m.config.outputs}};
  ordered_json artifacts = ordered_json::object();
  for (const auto& [name, sha] : m.artifacts) artifacts[name] = sha;
  j["artifacts"] = artifacts;
  if (m.score) {
    const auto& s = *m.score;
    ordered_json js = {{"detectors", detect::format_detector_list(s.detectors)},
                       {"nu", nu_to_json(s.nu)},
                       {"nu_source", s.nu_source}};
    if (s.nu_estimate) js["nu_estimate"] = nu_to_json(*s.nu_estimate);
    if (s.kappa) js["kappa"] = *s.kappa;
    js["scores_file"] = s.scores_file;
    js["scores_sha256"] = s.scores_sha256;
    j["score"] = js;
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out.flush()) throw IoError("write to '" + path.string() + "' failed");
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  RunManifest m;
  try {
    const ordered_json j = ordered_json::parse(in);
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.isa = j.value("isa", "");
    const auto& c = j.at("config");
    auto& sc = m.config.scenario;
    sc.nu = nu_from_json(c.at("nu"));
    sc.d = c.at("d").get<std::size_t>();
    sc.magnitude = c.at("T").get<double>();
    sc.alpha = c.at("alpha").get<double>();
    sc.n = c.at("n").get<std::size_t>();
    sc.seed = c.at("seed").get<std::uint64_t>();
    m.config.detectors = detect::parse_detector_list(c.at("detectors").get<std::string>());
    m.config.outputs = c.at("outputs").get<std::string>();
    for (const auto& [name, sha] : j.at("artifacts").items()) m.artifacts.emplace_back(name, sha.get<std::string>());
    if (j.contains("score")) {
      const auto& js = j.at("score");
      ScoreRecord s;
      s.detectors = detect::parse_detector_list(js.at("detectors").get<std::string>());
      s.nu = nu_from_json(js.at("nu"));
      s.nu_source = js.at("nu_source").get<std::string>();
      if (js.contains("nu_estimate")) s.nu_estimate = nu_from_json(js.at("nu_estimate"));
      if (js.contains("kappa")) s.kappa = js.at("kappa").get<double>();
      s.scores_file = js.at("scores_file").get<std::string>();
      s.scores_sha256 = js.at("scores_sha256").get<std::string>();
      m.score = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed manifest '" + path.string() + "': " + e.what(), "manifest");
  }
  m.config.scenario.validate();
  return m;
}

}  // namespace ecftmf::cli
