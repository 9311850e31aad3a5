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

// GenPU-derived ablations and the supervised feed-forward baseline.
//
// Inverted GenPU swaps which data the negative pair is trained against: D_n
// discriminates positive data from G_n samples, and the generator-side value
// of that game carries a leading minus on both expectations. Symmetric GenPU
// ships twice: literally (both value functions are the positive game) and in
// the mirrored form where the second game uses negative data.

#ifndef TRIGAN_VARIANTS_H_
#define TRIGAN_VARIANTS_H_

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "trigan/data.h"
#include "trigan/losses.h"
#include "trigan/metrics.h"
#include "trigan/nn.h"

namespace trigan {

enum class VariantKind {
  kProposed,
  kInvertedGenPu,
  kSymmetricGenPu,
  kSymmetricGenPuIntended,
  kMlpBaseline,
};

// CLI spellings: proposed, inverted, symmetric, symmetric-intended, baseline.
std::string_view variant_name(VariantKind v);
VariantKind parse_variant(std::string_view name);

struct InvertedInputs {
  ProbVector d_n_on_positive;  // D_n(x), x ~ p_p
  ProbVector d_n_on_gn;        // D_n(G_n(z))
  ProbVector d_p_on_positive;  // D_p(x), x ~ p_p
  ProbVector d_p_on_gp;        // D_p(G_p(z))
};

struct InvertedValues {
  double negative_discriminator = 0.0;  // D_n ascends this
  double negated_generator = 0.0;       // sign-flipped game, G_n descends it
  double positive_game = 0.0;           // standard positive game
};

InvertedValues inverted_losses(const InvertedInputs& in);

enum class SymmetricMode { kAsPrinted, kIntended };
SymmetricMode parse_symmetric_mode(std::string_view name);

struct SymmetricInputs {
  ProbVector d_p_on_positive;
  ProbVector d_p_on_gp;
  ProbVector d_n_on_negative;  // read in kIntended mode only
  ProbVector d_n_on_gn;
};

// The two value functions. In kAsPrinted mode both are the positive game.
std::pair<double, double> symmetric_losses(const SymmetricInputs& in, SymmetricMode mode);

struct BaselineConfig {
  int iterations = 1000;
  int batch_size = 64;
  int hidden = 64;
  double learning_rate = 1e-3;
  nn::OptimizerKind optimizer = nn::OptimizerKind::kAdam;
  uint64_t seed = 1;
  int eval_every = 0;  // 0 disables validation records
  int run_id = 0;
};

struct BaselineResult {
  nn::NeuralNet classifier;  // [dim, hidden, hidden, 1], logistic output
  std::vector<metrics::MetricsRecord> telemetry;
};

// Supervised binary cross-entropy training. Throws on single-class data.
BaselineResult baseline_train(const data::LabeledDataset& train,
                              const data::LabeledDataset* validation,
                              const BaselineConfig& cfg);

std::vector<int> predict_labels(const nn::NeuralNet& classifier, const Eigen::MatrixXd& x);

}  // namespace trigan

#endif  // TRIGAN_VARIANTS_H_
