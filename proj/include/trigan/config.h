// Copyright 2026 The TriGAN Authors.
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

// JSON run configuration. Every key is optional; unknown keys are errors.
//
//   {
//     "iterations": 2000, "batch_size": 64, "noise_dim": 8, "hidden": 64,
//     "learning_rate": 0.001,            // or {"g_p": .., "d_y": ..}
//     "optimizer": "adam", "adam_beta1": 0.5, "adam_beta2": 0.999,
//     "seed": 1, "variant": "proposed", "gy_loss": "alg1-line14",
//     "eval_every": 100, "similarity_sample_cap": 20000,
//     "similarity_pairing": "nearest", "priors": {"pi_p": 0.5},
//     "split": [0.8, 0.1, 0.1], "repeats": 5, "out": "out",
//     "checkpoint": "out/checkpoint.json", "metrics_format": "csv",
//     "data": {"source": "toy", "n_per_class": 5000, "mean_positive": [2, 2],
//              "mean_negative": [-2, -2], "covariance_scale": 1.0},
//     "equilibrium": {"p_p": [1, 0], "p_n": [0, 1], "pi_p": 0.5, "grid_step": 0.05},
//     "grad_check": {"instances": 20, "tolerance": 1e-4}
//   }
//
// "data.source" is "toy", "corpus" (with "path" and "embedding_dim") or
// "csv" (with "path", a file written by gen-data).

#ifndef TRIGAN_CONFIG_H_
#define TRIGAN_CONFIG_H_

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigan/equilibrium.h"
#include "trigan/metrics.h"
#include "trigan/tri_gan.h"
#include "trigan/variants.h"

namespace trigan {

// Carries one "field: problem" line per invalid entry.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

enum class DataSourceKind { kToy, kCorpus, kCsv };

struct DataSource {
  DataSourceKind kind = DataSourceKind::kToy;
  int n_per_class = 5000;
  std::vector<double> mean_positive = {2.0, 2.0};
  std::vector<double> mean_negative = {-2.0, -2.0};
  double covariance_scale = 1.0;
  std::string path;        // corpus or csv
  int embedding_dim = 64;  // corpus
};

struct RunConfig {
  TrainConfig train;
  int noise_dim = 8;
  int hidden = 64;
  DataSource data;
  std::array<double, 3> split = {0.8, 0.1, 0.1};
  int repeats = 5;
  std::filesystem::path out = "out";
  std::filesystem::path checkpoint;  // empty: <out>/checkpoint.json
  metrics::EmitFormat metrics_format = metrics::EmitFormat::kCsv;
  EquilibriumQuery equilibrium;
  int grad_check_instances = 20;
  double grad_check_tolerance = 1e-4;

  VariantKind variant() const { return train.loss.variant; }
  std::filesystem::path checkpoint_path() const {
    return checkpoint.empty() ? out / "checkpoint.json" : checkpoint;
  }
  // Throws ConfigError listing every cross-field problem.
  void validate() const;
};

// Throws ConfigError on malformed JSON, unknown keys or bad values.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace trigan

#endif  // TRIGAN_CONFIG_H_
