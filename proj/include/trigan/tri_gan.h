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

// Three generator/discriminator pairs for positive samples, negative samples
// and class labels.
//
// G_p and G_n map noise to samples; D_p and D_n separate them from real
// positives and negatives. G_y maps a sample to the probability that it is
// positive. D_y is the global discriminator: it judges a sample together with
// a label, seeing real mixed-class data with its true label against G_p / G_n
// samples carrying the label G_y assigns to them. Every generated sample
// reaches D_y through that composition, which is what gives G_y a gradient.
//
// Each iteration: sample noise, positive, negative and mixed minibatches;
// ascend D_p, D_n, D_y; resample noise; descend G_p, G_n, G_y.

#ifndef TRIGAN_TRI_GAN_H_
#define TRIGAN_TRI_GAN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trigan/checkpoint.h"
#include "trigan/data.h"
#include "trigan/losses.h"
#include "trigan/metrics.h"
#include "trigan/nn.h"
#include "trigan/variants.h"

namespace trigan {

struct ModelShape {
  int sample_dim = 2;
  int noise_dim = 8;
  int hidden = 64;
};

struct TriGanModel {
  nn::NeuralNet g_p, g_n, g_y, d_p, d_n, d_y;
  Priors priors;
  int noise_dim = 0;
  int sample_dim = 0;

  // Throws std::invalid_argument on bad priors or mismatched net shapes.
  void validate() const;
  friend bool operator==(const TriGanModel&, const TriGanModel&);
};

// Generators [noise, h, h, dim] tanh/tanh/identity; D_p, D_n and G_y
// [dim, h, h, 1] relu/relu/logistic; D_y the same on dim + 1 inputs.
TriGanModel make_model(const ModelShape& shape, const Priors& priors, uint64_t seed);

enum class NetId { kGp, kGn, kGy, kDp, kDn, kDy };
inline constexpr NetId kAllNets[] = {NetId::kGp, NetId::kGn, NetId::kGy,
                                     NetId::kDp, NetId::kDn, NetId::kDy};
const char* net_name(NetId id);  // "Gp", "Gn", ...
nn::NeuralNet& net_of(TriGanModel& m, NetId id);
const nn::NeuralNet& net_of(const TriGanModel& m, NetId id);

Checkpoint to_checkpoint(const TriGanModel& m);
TriGanModel from_checkpoint(const Checkpoint& c);

struct LossConfig {
  VariantKind variant = VariantKind::kProposed;
  GyLossMode gy_mode = GyLossMode::kAlg1Line14;
};

struct DiscriminatorBatches {
  Eigen::MatrixXd noise;     // m x noise_dim
  Eigen::MatrixXd positive;  // m x dim, from p_p
  Eigen::MatrixXd negative;  // m x dim, from p_n
  Eigen::MatrixXd mixed;     // m x dim, from p
  Eigen::VectorXd mixed_labels;
};

struct GeneratorBatches {
  Eigen::MatrixXd noise;
  // Real positives; only the inverted variant's generator value reads them.
  Eigen::MatrixXd positive;
};

// Raw value functions reported as "positive", "negative" and "label" loss.
using PhaseTelemetry = metrics::LossTriple;

struct DiscriminatorStep {
  // Weighted objectives each discriminator ascends.
  double value_p = 0.0, value_n = 0.0, value_y = 0.0;
  nn::ParamGrads grad_p, grad_n, grad_y;
  PhaseTelemetry telemetry;
};

struct GeneratorStep {
  // Losses each generator descends.
  double loss_p = 0.0, loss_n = 0.0, loss_y = 0.0;
  nn::ParamGrads grad_p, grad_n, grad_y;
};

DiscriminatorStep discriminator_step(const TriGanModel& m, const DiscriminatorBatches& b,
                                     const LossConfig& cfg);
GeneratorStep generator_step(const TriGanModel& m, const GeneratorBatches& b,
                             const LossConfig& cfg);

// The same scalars computed forward-only from the public value functions;
// finite-difference checks differentiate these.
double discriminator_value(const TriGanModel& m, const DiscriminatorBatches& b,
                           const LossConfig& cfg, NetId which);
double generator_value(const TriGanModel& m, const GeneratorBatches& b,
                       const LossConfig& cfg, NetId which);

struct LearningRates {
  double g_p = 1e-3, g_n = 1e-3, g_y = 1e-3;
  double d_p = 1e-3, d_n = 1e-3, d_y = 1e-3;
  static LearningRates uniform(double lr) { return {lr, lr, lr, lr, lr, lr}; }
};

struct TrainConfig {
  int iterations = 2000;
  int batch_size = 64;
  LearningRates learning_rates;
  nn::OptimizerKind optimizer = nn::OptimizerKind::kAdam;
  double adam_beta1 = 0.5;
  double adam_beta2 = 0.999;
  uint64_t seed = 1;
  LossConfig loss;
  int eval_every = 100;  // 0 disables evaluation records
  int similarity_sample_cap = 20000;
  metrics::Pairing pairing = metrics::Pairing::kNearest;
  std::optional<Priors> priors;  // empirical train frequencies when unset
  int run_id = 0;

  void validate() const;
};

struct TrainResult {
  TriGanModel model;
  // One record per iteration with the loss triple; every eval_every-th also
  // carries validation P/R/F1 and the similarity triple.
  std::vector<metrics::MetricsRecord> telemetry;
};

TrainResult train(TriGanModel model, const data::LabeledDataset& train_set,
                  const data::LabeledDataset* validation, const TrainConfig& cfg);

struct Classification {
  double score = 0.0;
  int label = 0;
};

// score = G_y(x); label = 1 iff score >= 0.5.
Classification classify(const TriGanModel& m, const Eigen::VectorXd& x);
std::vector<int> classify_batch(const TriGanModel& m, const Eigen::MatrixXd& x);

// Generated samples; row i of the result is G(noise row i).
Eigen::MatrixXd generate(const nn::NeuralNet& generator, int n, int noise_dim, uint64_t seed);

// Similarity of G_p / G_n samples to their real classes, pooled over both.
metrics::SimilarityTriple generated_similarity(const TriGanModel& m,
                                               const data::LabeledDataset& real,
                                               int sample_cap, uint64_t seed,
                                               metrics::Pairing pairing);

struct GradCheckEntry {
  std::string label;  // e.g. "proposed/alg1-line14/Gy"
  double max_relative_error = 0.0;
};

// Backprop vs extended-precision central differences for all six nets under
// every loss configuration (both G_y modes, inverted, both symmetric modes),
// over `instances` random small models and batches each. Entries hold the
// largest elementwise relative error.
std::vector<GradCheckEntry> check_all_gradients(uint64_t seed, int instances,
                                                double eps = nn::kGradCheckEpsilon);

}  // namespace trigan

#endif  // TRIGAN_TRI_GAN_H_
