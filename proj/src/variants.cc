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

#include "trigan/variants.h"

#include <array>
#include <random>
#include <stdexcept>
#include <string>

#include "trigan/random.h"

namespace trigan {

std::string_view variant_name(VariantKind v) {
  switch (v) {
    case VariantKind::kProposed:
      return "proposed";
    case VariantKind::kInvertedGenPu:
      return "inverted";
    case VariantKind::kSymmetricGenPu:
      return "symmetric";
    case VariantKind::kSymmetricGenPuIntended:
      return "symmetric-intended";
    case VariantKind::kMlpBaseline:
      return "baseline";
  }
  return "proposed";
}

VariantKind parse_variant(std::string_view name) {
  for (VariantKind v : {VariantKind::kProposed, VariantKind::kInvertedGenPu,
                        VariantKind::kSymmetricGenPu, VariantKind::kSymmetricGenPuIntended,
                        VariantKind::kMlpBaseline}) {
    if (variant_name(v) == name) return v;
  }
  throw std::invalid_argument(
      "unknown variant '" + std::string(name) +
      "' (expected proposed, inverted, symmetric, symmetric-intended or baseline)");
}

InvertedValues inverted_losses(const InvertedInputs& in) {
  InvertedValues v;
  // D_n is trained against positive data.
  v.negative_discriminator = gan_objective(in.d_n_on_positive, in.d_n_on_gn);
  v.negated_generator = -mean_log(in.d_n_on_positive) - mean_log1m(in.d_n_on_gn);
  v.positive_game = gan_objective(in.d_p_on_positive, in.d_p_on_gp);
  return v;
}

SymmetricMode parse_symmetric_mode(std::string_view name) {
  if (name == "as-printed") return SymmetricMode::kAsPrinted;
  if (name == "intended") return SymmetricMode::kIntended;
  throw std::invalid_argument("unknown symmetric mode '" + std::string(name) +
                              "' (expected as-printed or intended)");
}

std::pair<double, double> symmetric_losses(const SymmetricInputs& in, SymmetricMode mode) {
  const double first = gan_objective(in.d_p_on_positive, in.d_p_on_gp);
  if (mode == SymmetricMode::kAsPrinted)
    return {first, gan_objective(in.d_p_on_positive, in.d_p_on_gp)};
  return {first, gan_objective(in.d_n_on_negative, in.d_n_on_gn)};
}

std::vector<int> predict_labels(const nn::NeuralNet& classifier, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd scores = nn::forward(classifier, x);
  std::vector<int> out(static_cast<size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) out[i] = scores(i, 0) >= 0.5 ? 1 : 0;
  return out;
}

BaselineResult baseline_train(const data::LabeledDataset& train,
                              const data::LabeledDataset* validation,
                              const BaselineConfig& cfg) {
  data::class_priors(train);  // rejects empty and single-class data
  if (cfg.iterations < 0 || cfg.batch_size < 1 || cfg.hidden < 1)
    throw std::invalid_argument("baseline config: counts must be positive");

  const int dim = train.dim();
  const std::array<int, 4> dims = {dim, cfg.hidden, cfg.hidden, 1};
  const std::array<nn::Activation, 3> acts = {nn::Activation::kRelu, nn::Activation::kRelu,
                                              nn::Activation::kLogistic};
  BaselineResult result{nn::net_init(dims, acts, derive_seed(cfg.seed, 0)), {}};
  nn::OptimizerState opt =
      nn::OptimizerState::for_net(result.classifier, cfg.optimizer, cfg.learning_rate);

  const Eigen::MatrixXd x_all = train.features();
  Eigen::VectorXd y_all(static_cast<Eigen::Index>(train.size()));
  for (size_t i = 0; i < train.size(); ++i) y_all(static_cast<Eigen::Index>(i)) = train[i].label;

  std::mt19937_64 rng(derive_seed(cfg.seed, 1));
  const double m = cfg.batch_size;
  for (int it = 1; it <= cfg.iterations; ++it) {
    Eigen::VectorXi idx;
    const Eigen::MatrixXd x = sample_rows(x_all, cfg.batch_size, rng, &idx);
    Eigen::VectorXd y(cfg.batch_size);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = y_all(idx(i));

    nn::ForwardCache cache;
    const Eigen::VectorXd p = nn::forward(result.classifier, x, cache).col(0);
    const Eigen::ArrayXd per_row =
        -(y.array() * p.array().log() + (1.0 - y.array()) * (1.0 - p.array()).log());
    const double n_pos = y.sum();
    const double n_neg = m - n_pos;
    const double bce_pos = n_pos > 0 ? (per_row * y.array()).sum() / n_pos : 0.0;
    const double bce_neg = n_neg > 0 ? (per_row * (1.0 - y.array())).sum() / n_neg : 0.0;
    const Eigen::MatrixXd dp =
        ((-(y.array() / p.array()) + (1.0 - y.array()) / (1.0 - p.array())) / m).matrix();
    const nn::BackwardResult back = nn::backward(result.classifier, cache, dp);
    nn::optimizer_step(result.classifier, back.grads, opt, nn::Direction::kDescend);

    metrics::MetricsRecord rec;
    rec.run = cfg.run_id;
    rec.iteration = it;
    // Class-conditional and overall cross-entropy of the minibatch.
    rec.losses = metrics::LossTriple{bce_pos, bce_neg, per_row.mean()};
    if (validation && !validation->empty() && cfg.eval_every > 0 && it % cfg.eval_every == 0) {
      const auto pred = predict_labels(result.classifier, validation->features());
      const auto truth = validation->labels();
      const metrics::Prf prf = metrics::precision_recall_f1(pred, truth);
      rec.precision = prf.precision;
      rec.recall = prf.recall;
      rec.f1 = prf.f1;
    }
    result.telemetry.push_back(std::move(rec));
  }
  return result;
}

}  // namespace trigan
