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

// Subcommands behind the `trigan` binary. Each writes only under cfg.out.
//
//   train               checkpoint.json, telemetry.csv, projection.csv
//   eval                eval.csv (P/R/F1 of the checkpoint on the test split)
//   gen-data            dataset.csv, train.csv, validation.csv, test.csv
//   verify-equilibrium  equilibrium.txt, equilibrium.json
//   grad-check          grad_check.csv
//   repeat              runs.csv, telemetry.csv, summary.csv

#ifndef TRIGAN_RUNNER_H_
#define TRIGAN_RUNNER_H_

#include <ostream>
#include <string_view>

#include "trigan/config.h"
#include "trigan/data.h"
#include "trigan/metrics.h"

namespace trigan {

enum class Command { kTrain, kEval, kGenData, kVerifyEquilibrium, kGradCheck, kRepeat };
std::string_view command_name(Command c);
Command parse_command(std::string_view name);

// The configured dataset; toy data and corpus embeddings are seeded by `seed`.
data::LabeledDataset load_data(const RunConfig& cfg, uint64_t seed);

// Train/validation/test split of load_data(cfg, seed).
data::Split load_split(const RunConfig& cfg, uint64_t seed);

struct RunSummary {
  std::vector<metrics::MetricsRecord> telemetry;
  metrics::Prf test;
};

// One full training run of cfg.variant() with cfg.train.seed, evaluated on the
// test split. Data comes from `data_seed`.
RunSummary train_and_test(const RunConfig& cfg, uint64_t data_seed,
                          Checkpoint* checkpoint_out = nullptr);

// Runs one subcommand. Returns the process exit status: 0 on success, 1 when a
// verification check fails. Exceptions propagate.
int run_command(Command command, const RunConfig& cfg, std::ostream& log);

}  // namespace trigan

#endif  // TRIGAN_RUNNER_H_
