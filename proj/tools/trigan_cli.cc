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

// trigan <command> [--config FILE] [--seed N] [--variant V] [--out DIR] [--gy-loss M]

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "trigan/checkpoint.h"
#include "trigan/config.h"
#include "trigan/runner.h"

int main(int argc, char** argv) {
  CLI::App app{"Three-pair GAN for claim verification"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::string variant, out, gy_loss;
  for (trigan::Command c :
       {trigan::Command::kTrain, trigan::Command::kEval, trigan::Command::kGenData,
        trigan::Command::kVerifyEquilibrium, trigan::Command::kGradCheck,
        trigan::Command::kRepeat}) {
    CLI::App* sub = app.add_subcommand(std::string(trigan::command_name(c)));
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--seed", seed, "base seed");
    sub->add_option("--variant", variant, "proposed, inverted, symmetric, symmetric-intended, baseline");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--gy-loss", gy_loss, "alg1-line14 or eq4");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const trigan::Command command =
        trigan::parse_command(app.get_subcommands().front()->get_name());
    trigan::RunConfig cfg =
        config_path.empty() ? trigan::parse_config("{}") : trigan::load_config(config_path);
    if (seed) cfg.train.seed = *seed;
    if (!variant.empty()) cfg.train.loss.variant = trigan::parse_variant(variant);
    if (!out.empty()) cfg.out = out;
    if (!gy_loss.empty()) cfg.train.loss.gy_mode = trigan::parse_gy_loss_mode(gy_loss);
    cfg.validate();
    return trigan::run_command(command, cfg, std::cout);
  } catch (const trigan::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
