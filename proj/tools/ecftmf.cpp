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

// ecftmf: simulate, score and evaluate finite-target detectors.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ecftmf/cli/commands.hpp"
#include "ecftmf/error.hpp"
#include "ecftmf/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace ecftmf;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return 1;
    case ErrorKind::io: return 2;
    case ErrorKind::numerical: return 3;
  }
  return 1;
}

std::optional<double> optional_nu(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return cli::parse_double(text, "nu");
}

void print_metrics(const std::vector<cli::MetricsRow>& rows) {
  std::printf("%-8s %10s %12s %12s\n", "detector", "auc", "far@pd0.5", "threshold");
  for (const auto& r : rows) {
    std::printf("%-8s %10.6f %12.6f %12.6g\n", r.detector.c_str(), r.auc, r.far_at_pd50, r.threshold);
  }
}

void report_score(const cli::ScoreRecord& rec) {
  std::cerr << "scored " << detect::format_detector_list(rec.detectors) << " with nu=" << cli::format_double(rec.nu)
            << " (" << rec.nu_source << ") -> " << rec.scores_file << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-target matched filter detectors: simulation, scoring and evaluation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ecftmf ") + ECFTMF_VERSION);

  std::string isa;
  app.add_option("--isa", isa, "Force kernel ISA (scalar, avx2, neon)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a matched-pair dataset from a config file");
  std::string sim_config, sim_out;
  sim->add_option("-c,--config", sim_config, "Config file")->required();
  sim->add_option("-o,--out", sim_out, "Output directory (overrides 'outputs')");

  // score
  auto* score = app.add_subcommand("score", "Score a simulated dataset");
  std::string score_dir, score_detectors, score_nu, score_out;
  bool score_estimate = false;
  score->add_option("-d,--dataset", score_dir, "Run directory written by 'simulate'")->required();
  score->add_option("--detectors", score_detectors, "Comma-separated detector list");
  auto* nu_opt = score->add_option("--nu", score_nu, "Override nu (number or inf)");
  score->add_flag("--estimate-nu", score_estimate, "Estimate nu from the background rows")->excludes(nu_opt);
  score->add_option("-o,--out", score_out, "Scores CSV (default <dataset>/scores.csv)");

  // score-matrix
  auto* smat = app.add_subcommand("score-matrix", "Score every row of a pixel matrix against a signature");
  cli::MatrixScoreOptions mopt;
  std::string mat_detectors, mat_nu, mat_matrix, mat_signature, mat_out;
  smat->add_option("-m,--matrix", mat_matrix, "Pixel matrix CSV (header c0,c1,...)")->required();
  smat->add_option("-s,--signature", mat_signature, "Single-row signature CSV")->required();
  smat->add_flag("--whitened", mopt.whitened, "Rows are already de-meaned and whitened");
  smat->add_option("--detectors", mat_detectors, "Comma-separated detector list");
  auto* mat_nu_opt = smat->add_option("--nu", mat_nu, "nu for EC detectors (number or inf)");
  smat->add_flag("--estimate-nu", mopt.estimate_nu, "Estimate nu from the matrix")->excludes(mat_nu_opt);
  smat->add_option("--ridge", mopt.ridge, "Ridge added to the covariance diagonal");
  smat->add_option("-o,--out", mat_out, "Scores CSV")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Compute AUC and false-alarm rate at detection rate 0.5");
  std::string eval_scores, eval_out, eval_roc;
  evaluate->add_option("-s,--scores", eval_scores, "Scores CSV")->required();
  evaluate->add_option("-o,--out", eval_out, "Metrics CSV (default metrics.csv next to scores)");
  evaluate->add_option("--roc", eval_roc, "Also write ROC points to this CSV");

  // run
  auto* run = app.add_subcommand("run", "simulate + score + evaluate in one go");
  std::string run_config, run_out;
  run->add_option("-c,--config", run_config, "Config file")->required();
  run->add_option("-o,--out", run_out, "Output directory (overrides 'outputs')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!isa.empty()) simd::force_isa(simd::parse_isa(isa));

    if (*sim) {
      const cli::RunConfig cfg = cli::load_config(sim_config);
      const fs::path dir = sim_out.empty() ? fs::path(cfg.outputs) : fs::path(sim_out);
      cli::cmd_simulate(cfg, dir);
      std::cerr << "wrote " << cfg.scenario.n << " matched pairs (d=" << cfg.scenario.d << ") to " << dir.string()
                << "\n";
    } else if (*score) {
      cli::ScoreOptions opt;
      opt.dataset = score_dir;
      if (!score_detectors.empty()) opt.detectors = detect::parse_detector_list(score_detectors);
      opt.nu = optional_nu(score_nu);
      opt.estimate_nu = score_estimate;
      if (!score_out.empty()) opt.out = score_out;
      report_score(cli::cmd_score(opt));
    } else if (*smat) {
      mopt.matrix = mat_matrix;
      mopt.signature = mat_signature;
      mopt.out = mat_out;
      mopt.nu = optional_nu(mat_nu);
      if (!mat_detectors.empty()) mopt.detectors = detect::parse_detector_list(mat_detectors);
      report_score(cli::cmd_score_matrix(mopt));
    } else if (*evaluate) {
      cli::EvaluateOptions opt;
      opt.scores = eval_scores;
      opt.out = eval_out.empty() ? fs::path(eval_scores).parent_path() / cli::kMetricsFile : fs::path(eval_out);
      if (!eval_roc.empty()) opt.roc_out = eval_roc;
      print_metrics(cli::cmd_evaluate(opt));
    } else if (*run) {
      const cli::RunConfig cfg = cli::load_config(run_config);
      const fs::path dir = run_out.empty() ? fs::path(cfg.outputs) : fs::path(run_out);
      cli::cmd_simulate(cfg, dir);
      cli::ScoreOptions sopt;
      sopt.dataset = dir;
      report_score(cli::cmd_score(sopt));
      cli::EvaluateOptions eopt;
      eopt.scores = dir / cli::kScoresFile;
      eopt.out = dir / cli::kMetricsFile;
      print_metrics(cli::cmd_evaluate(eopt));
    }
  } catch (const ValidationError& e) {
    std::cerr << "error" << (e.field().empty() ? "" : " [" + e.field() + "]") << ": " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
