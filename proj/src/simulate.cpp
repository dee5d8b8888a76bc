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

#include "ecftmf/simulate.hpp"

#include <cmath>
#include <string>

#include "ecftmf/error.hpp"

namespace ecftmf::sim {

void ScenarioConfig::validate() const {
  if (std::isnan(nu) || !(nu > 2.0)) throw ValidationError("nu must be > 2 or inf", "nu");
  if (d < 1) throw ValidationError("d must be >= 1", "d");
  if (!(magnitude > 0.0) || !std::isfinite(magnitude)) throw ValidationError("T must be a finite value > 0", "T");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)", "alpha");
  if (n < 1) throw ValidationError("n must be >= 1", "n");
}

detect::TargetSpec make_target(std::size_t d, double magnitude) {
  if (d < 1) throw ValidationError("d must be >= 1", "d");
  if (!(magnitude > 0.0)) throw ValidationError("T must be > 0", "T");
  detect::TargetSpec t;
  t.signature.assign(d, 0.0);
  t.signature[0] = magnitude;
  return t;
}

mvt::BackgroundModel scenario_model(const ScenarioConfig& config) {
  config.validate();
  return mvt::BackgroundModel::standard(config.d, config.nu);
}

DataMatrix implant(const DataMatrix& background, const detect::TargetSpec& target, double alpha) {
  if (background.cols() != target.dim()) throw DimensionError("implant: target/background dimension mismatch");
  DataMatrix out(background.rows(), background.cols());
  const double keep = 1.0 - alpha;
  for (std::size_t r = 0; r < background.rows(); ++r) {
    auto z = background.row(r);
    auto x = out.row(r);
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = keep * z[i] + alpha * target.signature[i];
  }
  return out;
}

LabeledDataset generate(const ScenarioConfig& config) {
  const mvt::BackgroundModel model = scenario_model(config);
  mvt::Rng rng(config.seed);
  LabeledDataset ds;
  ds.config = config;
  ds.target_spec = make_target(config.d, config.magnitude);
  ds.background = mvt::sample(model, config.n, rng);
  ds.targets = implant(ds.background, ds.target_spec, config.alpha);
  return ds;
}

}  // namespace ecftmf::sim
