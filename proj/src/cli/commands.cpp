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

#include "ecftmf/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "ecftmf/detectors.hpp"
#include "ecftmf/error.hpp"
#include "ecftmf/evaluate.hpp"
#include "ecftmf/mvt.hpp"
#include "ecftmf/simd/kernels.hpp"
#include "ecftmf/simulate.hpp"

namespace ecftmf::cli {
namespace fs = std::filesystem;
namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create directory '" + dir.string() + "'");
}

bool any_general(const std::vector<detect::DetectorKind>& kinds) {
  return std::any_of(kinds.begin(), kinds.end(),
                     [](detect::DetectorKind k) { return k.tail == detect::Tail::general; });
}

struct NuChoice {
  double nu = mvt::kGaussian;
  std::string source;
  std::optional<double> estimate;
  std::optional<double> kappa;
};

// Whitens with the sample statistics of `background` before estimating.
NuChoice estimate_from(const DataMatrix& background, double ridge) {
  const MeanCov mc = estimate_mean_cov(background, ridge);
  const mvt::NuEstimate est = mvt::estimate_nu(whiten(background, mc.mean, mc.factor));
  NuChoice c;
  c.nu = est.nu;
  c.source = "estimate";
  c.estimate = est.nu;
  c.kappa = est.kappa;
  return c;
}

void check_detector_nu(double nu, const std::vector<detect::DetectorKind>& kinds) {
  if (any_general(kinds) && (std::isnan(nu) || !(nu > 2.0))) {
    throw ValidationError("EC-AMF and EC-FTMF need nu > 2 (or inf), got " + format_double(nu), "nu");
  }
}

// Background model handed to the scorer: ν only matters to the general
// detectors, so others run with the Gaussian placeholder when ν is unusable.
mvt::BackgroundModel scoring_model(std::vector<double> mu, SpdFactor cov, double nu) {
  const double usable = (!std::isnan(nu) && nu > 2.0) ? nu : mvt::kGaussian;
  return mvt::BackgroundModel(std::move(mu), std::move(cov), usable);
}

void write_pixels(std::ostream& out, const detect::Scorer& scorer, const DataMatrix& pixels, Label label,
                  std::size_t first_index, const std::vector<detect::DetectorKind>& kinds) {
  std::vector<double> whitened(scorer.dim());
  for (std::size_t r = 0; r < pixels.rows(); ++r) {
    const std::size_t pixel = first_index + r;
    try {
      const detect::PixelForms forms = scorer.forms(pixels.row(r), whitened);
      const eval::MfrPoint mfr = eval::mfr_project(whitened, scorer.whitened_target());
      for (detect::DetectorKind kind : kinds) {
        const detect::DetectorOutput o = scorer.evaluate(forms, kind);
        write_score_row(out, ScoreRow{pixel, label, std::string(kind.name()), o.score, o.alpha_hat, mfr.mf,
                                      mfr.residual});
      }
    } catch (const Error& e) {
      throw detect::BatchError(pixel, e);
    }
  }
}

std::ofstream open_scores(const fs::path& path) {
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << kScoresHeader << '\n';
  return out;
}

void close_checked(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

RunManifest cmd_simulate(const RunConfig& config, const fs::path& out_dir) {
  config.scenario.validate();
  ensure_dir(out_dir);
  const sim::LabeledDataset ds = sim::generate(config.scenario);

  DataMatrix signature(1, ds.target_spec.dim(), ds.target_spec.signature);
  write_matrix_csv(out_dir / kBackgroundFile, ds.background);
  write_matrix_csv(out_dir / kTargetsFile, ds.targets);
  write_matrix_csv(out_dir / kSignatureFile, signature);

  RunManifest m;
  m.isa = std::string(simd::isa_name(simd::active_isa()));
  m.config = config;
  for (const char* name : {kBackgroundFile, kTargetsFile, kSignatureFile}) {
    m.artifacts.emplace_back(name, sha256_file(out_dir / name));
  }
  write_manifest(out_dir / kManifestFile, m);
  return m;
}

ScoreRecord cmd_score(const ScoreOptions& opt) {
  if (opt.nu && opt.estimate_nu) throw ValidationError("--nu and --estimate-nu are mutually exclusive", "nu");
  const fs::path manifest_path = opt.dataset / kManifestFile;
  RunManifest manifest = read_manifest(manifest_path);
  const auto& sc = manifest.config.scenario;

  const DataMatrix background = read_matrix_csv(opt.dataset / kBackgroundFile);
  const DataMatrix targets = read_matrix_csv(opt.dataset / kTargetsFile);
  const DataMatrix signature = read_matrix_csv(opt.dataset / kSignatureFile);
  if (background.cols() != sc.d || targets.cols() != sc.d || signature.cols() != sc.d || signature.rows() != 1) {
    throw ValidationError("dataset files disagree with manifest dimension d=" + std::to_string(sc.d), "d");
  }
  if (background.rows() != targets.rows()) {
    throw ValidationError("background and targets must have the same number of rows", "n");
  }

  const std::vector<detect::DetectorKind> kinds = opt.detectors.value_or(manifest.config.detectors);
  if (kinds.empty()) throw ValidationError("no detectors requested", "detectors");

  NuChoice nu;
  if (opt.estimate_nu) {
    nu = estimate_from(background, 0.0);
  } else if (opt.nu) {
    nu.nu = *opt.nu;
    nu.source = "override";
  } else {
    nu.nu = sc.nu;
    nu.source = "config";
  }
  check_detector_nu(nu.nu, kinds);

  // Simulated data live in whitened coordinates: µ = 0, R = I.
  const detect::Scorer scorer(scoring_model(std::vector<double>(sc.d, 0.0), SpdFactor::identity(sc.d), nu.nu),
                              detect::TargetSpec{std::vector<double>(signature.row(0).begin(), signature.row(0).end())});

  const fs::path out_path = opt.out.value_or(opt.dataset / kScoresFile);
  auto out = open_scores(out_path);
  write_pixels(out, scorer, background, Label::background, 0, kinds);
  write_pixels(out, scorer, targets, Label::target, background.rows(), kinds);
  close_checked(out, out_path);

  ScoreRecord rec;
  rec.detectors = kinds;
  rec.nu = nu.nu;
  rec.nu_source = nu.source;
  rec.nu_estimate = nu.estimate;
  rec.kappa = nu.kappa;
  rec.scores_file = out_path.filename().string();
  rec.scores_sha256 = sha256_file(out_path);
  manifest.score = rec;
  write_manifest(manifest_path, manifest);
  return rec;
}

ScoreRecord cmd_score_matrix(const MatrixScoreOptions& opt) {
  if (opt.nu && opt.estimate_nu) throw ValidationError("--nu and --estimate-nu are mutually exclusive", "nu");
  if (opt.detectors.empty()) throw ValidationError("no detectors requested", "detectors");
  const DataMatrix data = read_matrix_csv(opt.matrix);
  const DataMatrix signature = read_matrix_csv(opt.signature);
  if (signature.rows() != 1 || signature.cols() != data.cols()) {
    throw ValidationError("signature must be a single row with " + std::to_string(data.cols()) + " channels",
                          "signature");
  }

  std::vector<double> mu(data.cols(), 0.0);
  SpdFactor cov = SpdFactor::identity(data.cols());
  if (!opt.whitened) {
    MeanCov mc = estimate_mean_cov(data, opt.ridge);
    mu = std::move(mc.mean);
    cov = std::move(mc.factor);
  }

  NuChoice nu;
  if (opt.estimate_nu) {
    nu = estimate_from(data, opt.ridge);
  } else if (opt.nu) {
    nu.nu = *opt.nu;
    nu.source = "override";
  } else if (any_general(opt.detectors)) {
    throw ValidationError("EC-AMF and EC-FTMF on real data need --nu or --estimate-nu", "nu");
  } else {
    nu.source = "unused";
  }
  check_detector_nu(nu.nu, opt.detectors);

  const detect::Scorer scorer(scoring_model(std::move(mu), std::move(cov), nu.nu),
                              detect::TargetSpec{std::vector<double>(signature.row(0).begin(), signature.row(0).end())});
  auto out = open_scores(opt.out);
  write_pixels(out, scorer, data, Label::unlabeled, 0, opt.detectors);
  close_checked(out, opt.out);

  ScoreRecord rec;
  rec.detectors = opt.detectors;
  rec.nu = nu.nu;
  rec.nu_source = nu.source;
  rec.nu_estimate = nu.estimate;
  rec.kappa = nu.kappa;
  rec.scores_file = opt.out.filename().string();
  rec.scores_sha256 = sha256_file(opt.out);
  return rec;
}

std::vector<MetricsRow> cmd_evaluate(const EvaluateOptions& opt) {
  const std::vector<ScoreRow> rows = read_scores_csv(opt.scores);

  std::vector<std::string> order;
  std::map<std::string, ScoreSet> sets;
  for (const ScoreRow& r : rows) {
    auto [it, inserted] = sets.try_emplace(r.detector);
    if (inserted) {
      order.push_back(r.detector);
      it->second.detector = detect::parse_detector(r.detector);
    }
    it->second.scores.push_back(r.score);
    it->second.labels.push_back(r.label);
  }
  if (order.empty()) throw ValidationError("scores file '" + opt.scores.string() + "' has no rows", "scores");

  std::vector<MetricsRow> metrics;
  std::optional<std::ofstream> roc_out;
  if (opt.roc_out) {
    roc_out.emplace(*opt.roc_out, std::ios::binary | std::ios::trunc);
    if (!*roc_out) throw IoError("cannot open '" + opt.roc_out->string() + "' for writing");
    *roc_out << kRocHeader << '\n';
  }
  for (const std::string& name : order) {
    const ScoreSet& set = sets.at(name);
    const eval::RocCurve curve = eval::roc(set);
    const eval::OperatingPoint op = eval::false_alarm_at_detection(set, 0.5);
    metrics.push_back({name, curve.auc, op.false_alarm_rate, op.threshold});
    if (roc_out) {
      for (const auto& p : curve.points) {
        *roc_out << name << ',' << format_double(p.false_alarm_rate) << ',' << format_double(p.detection_rate)
                 << '\n';
      }
    }
  }
  if (roc_out) {
    roc_out->close();
    if (!*roc_out) throw IoError("write to '" + opt.roc_out->string() + "' failed");
  }
  if (opt.out.has_parent_path()) ensure_dir(opt.out.parent_path());
  write_metrics_csv(opt.out, metrics);
  return metrics;
}

}  // namespace ecftmf::cli
