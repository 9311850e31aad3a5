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

#include "trigan/tri_gan.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "trigan/grad_oracle.h"
#include "trigan/random.h"

namespace trigan {
namespace {

using Matrix = Eigen::MatrixXd;
using nn::NeuralNet;

struct Pass {
  nn::ForwardCache cache;
  ProbVector prob;
};

Pass run(const NeuralNet& net, const Matrix& x) {
  Pass p;
  p.prob = nn::forward(net, x, p.cache).col(0);
  return p;
}

Matrix column(const ProbVector& v) { return Matrix(v); }

Matrix with_label(const Matrix& x, const Eigen::VectorXd& label) {
  Matrix out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()) = label;
  return out;
}

Matrix with_constant_label(const Matrix& x, double label) {
  return with_label(x, Eigen::VectorXd::Constant(x.rows(), label));
}

// A generated batch labeled by G_y and judged by D_y.
struct LabeledFake {
  Pass label;
  Pass judge;
};

LabeledFake label_and_judge(const TriGanModel& m, const Matrix& x) {
  LabeledFake f;
  f.label = run(m.g_y, x);
  f.judge = run(m.d_y, with_label(x, f.label.prob));
  return f;
}

struct JudgeBackward {
  Matrix dx;         // through both the sample and the label input of D_y
  nn::ParamGrads gy;
};

JudgeBackward judge_backward(const TriGanModel& m, const LabeledFake& f,
                             const ProbVector& d_judge) {
  const nn::BackwardResult dy = nn::backward(m.d_y, f.judge.cache, column(d_judge));
  const Eigen::Index d = m.sample_dim;
  nn::BackwardResult gy = nn::backward(m.g_y, f.label.cache, dy.input_grad.col(d));
  return {dy.input_grad.leftCols(d) + gy.input_grad, std::move(gy.grads)};
}

nn::ParamGrads param_grads(const NeuralNet& net, const Pass& p, const ProbVector& d_prob) {
  return nn::backward(net, p.cache, column(d_prob)).grads;
}

bool symmetric_as_printed(const LossConfig& cfg) {
  return cfg.variant == VariantKind::kSymmetricGenPu;
}

void require_gan_variant(const LossConfig& cfg) {
  if (cfg.variant == VariantKind::kMlpBaseline)
    throw std::invalid_argument("the baseline variant has no adversarial losses");
}

// Weights on the pair objectives each discriminator ascends. As printed, the
// symmetric variant's two value functions are both the positive game, so D_p
// ascends pi_p V + pi_n V = V and nothing reaches D_n.
struct PairWeights {
  double p;
  double n;
};

PairWeights pair_weights(const TriGanModel& m, const LossConfig& cfg) {
  if (symmetric_as_printed(cfg)) return {1.0, 0.0};
  return {m.priors.pi_p, m.priors.pi_n};
}

const Matrix& d_n_real_batch(const DiscriminatorBatches& b, const LossConfig& cfg) {
  return cfg.variant == VariantKind::kInvertedGenPu ? b.positive : b.negative;
}

void check_batches(const TriGanModel& m, const DiscriminatorBatches& b) {
  const Eigen::Index rows = b.noise.rows();
  if (rows == 0) throw std::invalid_argument("empty minibatch");
  if (b.noise.cols() != m.noise_dim)
    throw std::invalid_argument("noise batch width does not match noise_dim");
  for (const Matrix* x : {&b.positive, &b.negative, &b.mixed}) {
    if (x->rows() == 0 || x->cols() != m.sample_dim)
      throw std::invalid_argument("data batch shape does not match the model");
  }
  if (b.mixed_labels.size() != b.mixed.rows())
    throw std::invalid_argument("mixed batch needs one label per row");
}

// Smallest |pre-activation| of any rectifier unit of `net` over the rows of x.
double relu_margin(const NeuralNet& net, const Matrix& x) {
  double margin = std::numeric_limits<double>::infinity();
  Matrix cur = x;
  for (const nn::Layer& l : net.layers()) {
    Matrix z = (cur * l.weight.transpose()).rowwise() + l.bias.transpose();
    if (l.activation == nn::Activation::kRelu) {
      margin = std::min(margin, z.cwiseAbs().minCoeff());
      z = z.cwiseMax(0.0);
    } else if (l.activation == nn::Activation::kTanh) {
      z = z.array().tanh().matrix();
    } else if (l.activation == nn::Activation::kLogistic) {
      z = (1.0 / (1.0 + (-z.array()).exp())).matrix();
    }
    cur = std::move(z);
  }
  return margin;
}

// Distance of every rectifier input reached by the six objectives from its
// kink. Central differences across a kink do not estimate the gradient.
double kink_margin(const TriGanModel& m, const DiscriminatorBatches& db,
                   const GeneratorBatches& gb) {
  double margin = std::numeric_limits<double>::infinity();
  auto see = [&](const NeuralNet& net, const Matrix& x) {
    margin = std::min(margin, relu_margin(net, x));
  };
  see(m.d_p, db.positive);
  see(m.d_n, db.positive);
  see(m.d_n, db.negative);
  see(m.d_y, with_label(db.mixed, db.mixed_labels));
  for (const Matrix* noise : {&db.noise, &gb.noise}) {
    const Matrix x_p = nn::forward(m.g_p, *noise);
    const Matrix x_n = nn::forward(m.g_n, *noise);
    see(m.d_p, x_p);
    see(m.d_n, x_n);
    for (const Matrix* x : {&x_p, &x_n}) {
      see(m.g_y, *x);
      see(m.d_y, with_label(*x, nn::forward(m.g_y, *x).col(0)));
      see(m.d_y, with_constant_label(*x, 1.0));
      see(m.d_y, with_constant_label(*x, 0.0));
    }
  }
  return margin;
}

}  // namespace

void TriGanModel::validate() const {
  priors.validate();
  if (noise_dim < 1 || sample_dim < 1) throw std::invalid_argument("model dims must be positive");
  auto expect = [](const NeuralNet& n, int in, int out, const char* name) {
    if (n.input_dim() != in || n.output_dim() != out)
      throw std::invalid_argument(std::string(name) + " has shape " +
                                  std::to_string(n.input_dim()) + "->" +
                                  std::to_string(n.output_dim()) + ", expected " +
                                  std::to_string(in) + "->" + std::to_string(out));
  };
  expect(g_p, noise_dim, sample_dim, "Gp");
  expect(g_n, noise_dim, sample_dim, "Gn");
  expect(g_y, sample_dim, 1, "Gy");
  expect(d_p, sample_dim, 1, "Dp");
  expect(d_n, sample_dim, 1, "Dn");
  expect(d_y, sample_dim + 1, 1, "Dy");
}

bool operator==(const TriGanModel& a, const TriGanModel& b) {
  return a.g_p == b.g_p && a.g_n == b.g_n && a.g_y == b.g_y && a.d_p == b.d_p &&
         a.d_n == b.d_n && a.d_y == b.d_y && a.priors.pi_p == b.priors.pi_p &&
         a.priors.pi_n == b.priors.pi_n && a.noise_dim == b.noise_dim &&
         a.sample_dim == b.sample_dim;
}

TriGanModel make_model(const ModelShape& shape, const Priors& priors, uint64_t seed) {
  priors.validate();
  if (shape.sample_dim < 1 || shape.noise_dim < 1 || shape.hidden < 1)
    throw std::invalid_argument("model shape entries must be positive");
  using A = nn::Activation;
  const int h = shape.hidden;
  const std::array<int, 4> gen_dims = {shape.noise_dim, h, h, shape.sample_dim};
  const std::array<A, 3> gen_acts = {A::kTanh, A::kTanh, A::kIdentity};
  const std::array<int, 4> disc_dims = {shape.sample_dim, h, h, 1};
  const std::array<int, 4> joint_dims = {shape.sample_dim + 1, h, h, 1};
  const std::array<A, 3> disc_acts = {A::kRelu, A::kRelu, A::kLogistic};

  TriGanModel m;
  m.g_p = nn::net_init(gen_dims, gen_acts, derive_seed(seed, 0));
  m.g_n = nn::net_init(gen_dims, gen_acts, derive_seed(seed, 1));
  m.g_y = nn::net_init(disc_dims, disc_acts, derive_seed(seed, 2));
  m.d_p = nn::net_init(disc_dims, disc_acts, derive_seed(seed, 3));
  m.d_n = nn::net_init(disc_dims, disc_acts, derive_seed(seed, 4));
  m.d_y = nn::net_init(joint_dims, disc_acts, derive_seed(seed, 5));
  m.priors = priors;
  m.noise_dim = shape.noise_dim;
  m.sample_dim = shape.sample_dim;
  return m;
}

const char* net_name(NetId id) {
  switch (id) {
    case NetId::kGp:
      return "Gp";
    case NetId::kGn:
      return "Gn";
    case NetId::kGy:
      return "Gy";
    case NetId::kDp:
      return "Dp";
    case NetId::kDn:
      return "Dn";
    case NetId::kDy:
      return "Dy";
  }
  return "?";
}

NeuralNet& net_of(TriGanModel& m, NetId id) {
  return const_cast<NeuralNet&>(net_of(static_cast<const TriGanModel&>(m), id));
}

const NeuralNet& net_of(const TriGanModel& m, NetId id) {
  switch (id) {
    case NetId::kGp:
      return m.g_p;
    case NetId::kGn:
      return m.g_n;
    case NetId::kGy:
      return m.g_y;
    case NetId::kDp:
      return m.d_p;
    case NetId::kDn:
      return m.d_n;
    case NetId::kDy:
      return m.d_y;
  }
  throw std::invalid_argument("unknown net id");
}

Checkpoint to_checkpoint(const TriGanModel& m) {
  Checkpoint c;
  for (NetId id : kAllNets) c.nets.emplace(net_name(id), net_of(m, id));
  c.meta = {{"pi_p", m.priors.pi_p},
            {"pi_n", m.priors.pi_n},
            {"noise_dim", static_cast<double>(m.noise_dim)},
            {"sample_dim", static_cast<double>(m.sample_dim)}};
  return c;
}

TriGanModel from_checkpoint(const Checkpoint& c) {
  TriGanModel m;
  for (NetId id : kAllNets) {
    auto it = c.nets.find(net_name(id));
    if (it == c.nets.end())
      throw CheckpointError(std::string("checkpoint lacks net '") + net_name(id) + "'");
    net_of(m, id) = it->second;
  }
  for (const char* key : {"pi_p", "pi_n", "noise_dim", "sample_dim"})
    if (!c.meta.count(key))
      throw CheckpointError(std::string("checkpoint meta lacks '") + key + "'");
  m.priors = {c.meta.at("pi_p"), c.meta.at("pi_n")};
  m.noise_dim = static_cast<int>(c.meta.at("noise_dim"));
  m.sample_dim = static_cast<int>(c.meta.at("sample_dim"));
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("checkpoint does not hold a valid model: ") + e.what());
  }
  return m;
}

DiscriminatorStep discriminator_step(const TriGanModel& m, const DiscriminatorBatches& b,
                                     const LossConfig& cfg) {
  require_gan_variant(cfg);
  check_batches(m, b);
  const Priors& pri = m.priors;
  const PairWeights w = pair_weights(m, cfg);
  DiscriminatorStep s;

  const Matrix fake_p = nn::forward(m.g_p, b.noise);
  const Matrix fake_n = nn::forward(m.g_n, b.noise);

  // D_p: positive game.
  const Pass dp_real = run(m.d_p, b.positive);
  const Pass dp_fake = run(m.d_p, fake_p);
  const double objective_p = gan_objective(dp_real.prob, dp_fake.prob);
  s.value_p = w.p * objective_p;
  s.grad_p = param_grads(m.d_p, dp_real, w.p * mean_log_grad(dp_real.prob));
  s.grad_p += param_grads(m.d_p, dp_fake, w.p * mean_log1m_grad(dp_fake.prob));

  // D_n: negative game, or positive data against G_n when inverted.
  const Pass dn_real = run(m.d_n, d_n_real_batch(b, cfg));
  const Pass dn_fake = run(m.d_n, fake_n);
  const double objective_n = gan_objective(dn_real.prob, dn_fake.prob);
  s.value_n = w.n * objective_n;
  s.grad_n = param_grads(m.d_n, dn_real, w.n * mean_log_grad(dn_real.prob));
  s.grad_n += param_grads(m.d_n, dn_fake, w.n * mean_log1m_grad(dn_fake.prob));

  // D_y: real mixed data with true labels against generated data labeled by
  // G_y. The whole bracket carries a leading pi_p.
  const Pass dy_real = run(m.d_y, with_label(b.mixed, b.mixed_labels));
  const Pass dy_fake_p = run(m.d_y, with_label(fake_p, run(m.g_y, fake_p).prob));
  const Pass dy_fake_n = run(m.d_y, with_label(fake_n, run(m.g_y, fake_n).prob));
  const double objective_y =
      d_y_objective(dy_real.prob, dy_fake_p.prob, dy_fake_n.prob, pri);
  const double wy = pri.pi_p;
  s.value_y = wy * objective_y;
  s.grad_y = param_grads(m.d_y, dy_real, wy * mean_log_grad(dy_real.prob));
  s.grad_y += param_grads(m.d_y, dy_fake_p, wy * pri.pi_p * mean_log1m_grad(dy_fake_p.prob));
  s.grad_y += param_grads(m.d_y, dy_fake_n, wy * pri.pi_n * mean_log1m_grad(dy_fake_n.prob));

  s.telemetry.positive = objective_p;
  s.telemetry.negative = symmetric_as_printed(cfg) ? objective_p : objective_n;
  s.telemetry.label = objective_y;
  return s;
}

double discriminator_value(const TriGanModel& m, const DiscriminatorBatches& b,
                           const LossConfig& cfg, NetId which) {
  require_gan_variant(cfg);
  check_batches(m, b);
  const Priors& pri = m.priors;
  const Matrix fake_p = nn::forward(m.g_p, b.noise);
  const Matrix fake_n = nn::forward(m.g_n, b.noise);
  auto prob = [](const NeuralNet& n, const Matrix& x) -> ProbVector {
    return nn::forward(n, x).col(0);
  };

  switch (which) {
    case NetId::kDp:
    case NetId::kDn: {
      if (cfg.variant == VariantKind::kInvertedGenPu) {
        const InvertedValues v = inverted_losses({prob(m.d_n, b.positive), prob(m.d_n, fake_n),
                                                  prob(m.d_p, b.positive), prob(m.d_p, fake_p)});
        return which == NetId::kDp ? pri.pi_p * v.positive_game
                                   : pri.pi_n * v.negative_discriminator;
      }
      const SymmetricMode mode = symmetric_as_printed(cfg) ? SymmetricMode::kAsPrinted
                                                           : SymmetricMode::kIntended;
      const auto [first, second] =
          symmetric_losses({prob(m.d_p, b.positive), prob(m.d_p, fake_p),
                            prob(m.d_n, b.negative), prob(m.d_n, fake_n)},
                           mode);
      if (mode == SymmetricMode::kAsPrinted)
        return which == NetId::kDp ? pri.pi_p * first + pri.pi_n * second : 0.0;
      return which == NetId::kDp ? pri.pi_p * first : pri.pi_n * second;
    }
    case NetId::kDy: {
      const ProbVector real = prob(m.d_y, with_label(b.mixed, b.mixed_labels));
      const ProbVector on_gp = prob(m.d_y, with_label(fake_p, prob(m.g_y, fake_p)));
      const ProbVector on_gn = prob(m.d_y, with_label(fake_n, prob(m.g_y, fake_n)));
      return pri.pi_p * d_y_objective(real, on_gp, on_gn, pri);
    }
    default:
      throw std::invalid_argument("discriminator_value: not a discriminator");
  }
}

GeneratorStep generator_step(const TriGanModel& m, const GeneratorBatches& b,
                             const LossConfig& cfg) {
  require_gan_variant(cfg);
  if (b.noise.rows() == 0 || b.noise.cols() != m.noise_dim)
    throw std::invalid_argument("generator noise batch has the wrong shape");
  const Priors& pri = m.priors;
  GeneratorStep s;

  const Pass gp = [&] {
    Pass p;
    nn::forward(m.g_p, b.noise, p.cache);
    return p;
  }();
  const Pass gn = [&] {
    Pass p;
    nn::forward(m.g_n, b.noise, p.cache);
    return p;
  }();
  const Matrix& x_p = gp.cache.output();
  const Matrix& x_n = gn.cache.output();

  const Pass dp_fake = run(m.d_p, x_p);
  const Pass dn_fake = run(m.d_n, x_n);
  const LabeledFake lp = label_and_judge(m, x_p);
  const LabeledFake ln = label_and_judge(m, x_n);

  // G_p.
  ProbVector d_dp_fake;
  if (symmetric_as_printed(cfg)) {
    // Both printed value functions push G_p against D_p.
    s.loss_p = -mean_log(dp_fake.prob) - pri.pi_p * mean_log(lp.judge.prob);
    d_dp_fake = -mean_log_grad(dp_fake.prob);
  } else {
    s.loss_p = g_p_loss(dp_fake.prob, lp.judge.prob, pri.pi_p);
    d_dp_fake = -pri.pi_p * mean_log_grad(dp_fake.prob);
  }
  Matrix dx_p = nn::backward(m.d_p, dp_fake.cache, column(d_dp_fake)).input_grad;
  dx_p += judge_backward(m, lp, -pri.pi_p * mean_log_grad(lp.judge.prob)).dx;
  s.grad_p = nn::backward(m.g_p, gp.cache, dx_p).grads;

  // G_n.
  Matrix dx_n = judge_backward(m, ln, -pri.pi_n * mean_log_grad(ln.judge.prob)).dx;
  switch (cfg.variant) {
    case VariantKind::kInvertedGenPu: {
      if (b.positive.rows() == 0)
        throw std::invalid_argument("inverted variant needs real positives in the generator batch");
      const ProbVector dn_pos = nn::forward(m.d_n, b.positive).col(0);
      const double negated = -mean_log(dn_pos) - mean_log1m(dn_fake.prob);
      s.loss_n = pri.pi_n * (negated - mean_log(ln.judge.prob));
      dx_n += nn::backward(m.d_n, dn_fake.cache,
                           column(-pri.pi_n * mean_log1m_grad(dn_fake.prob)))
                  .input_grad;
      break;
    }
    case VariantKind::kSymmetricGenPu:
      s.loss_n = -pri.pi_n * mean_log(ln.judge.prob);
      break;
    default:
      s.loss_n = g_n_loss(dn_fake.prob, ln.judge.prob, pri.pi_n);
      dx_n += nn::backward(m.d_n, dn_fake.cache, column(-pri.pi_n * mean_log_grad(dn_fake.prob)))
                  .input_grad;
      break;
  }
  s.grad_n = nn::backward(m.g_n, gn.cache, dx_n).grads;

  // G_y.
  GyLossInputs gy_in{lp.judge.prob, ln.judge.prob, std::nullopt, std::nullopt};
  ProbVector d_lp = -pri.pi_p * mean_log_grad(lp.judge.prob);
  ProbVector d_ln = -pri.pi_n * mean_log_grad(ln.judge.prob);
  if (cfg.gy_mode == GyLossMode::kEq4) {
    gy_in.target_gp = ProbVector(nn::forward(m.d_y, with_constant_label(x_p, 1.0)).col(0));
    gy_in.target_gn = ProbVector(nn::forward(m.d_y, with_constant_label(x_n, 0.0)).col(0));
    d_lp = d_lp.cwiseProduct(*gy_in.target_gp);
    d_ln = d_ln.cwiseProduct(*gy_in.target_gn);
  }
  s.loss_y = g_y_loss(gy_in, pri, cfg.gy_mode);
  s.grad_y = judge_backward(m, lp, d_lp).gy;
  s.grad_y += judge_backward(m, ln, d_ln).gy;
  return s;
}

double generator_value(const TriGanModel& m, const GeneratorBatches& b,
                       const LossConfig& cfg, NetId which) {
  require_gan_variant(cfg);
  const Priors& pri = m.priors;
  auto prob = [](const NeuralNet& n, const Matrix& x) -> ProbVector {
    return nn::forward(n, x).col(0);
  };
  const Matrix x_p = nn::forward(m.g_p, b.noise);
  const Matrix x_n = nn::forward(m.g_n, b.noise);
  const ProbVector dy_p = prob(m.d_y, with_label(x_p, prob(m.g_y, x_p)));
  const ProbVector dy_n = prob(m.d_y, with_label(x_n, prob(m.g_y, x_n)));

  switch (which) {
    case NetId::kGp: {
      const ProbVector dp = prob(m.d_p, x_p);
      if (symmetric_as_printed(cfg)) return g_p_loss(dp, dy_p, pri.pi_p) - pri.pi_n * mean_log(dp);
      return g_p_loss(dp, dy_p, pri.pi_p);
    }
    case NetId::kGn: {
      if (cfg.variant == VariantKind::kInvertedGenPu) {
        const InvertedValues v = inverted_losses({prob(m.d_n, b.positive), prob(m.d_n, x_n),
                                                  prob(m.d_p, b.positive), prob(m.d_p, x_p)});
        return pri.pi_n * (v.negated_generator - mean_log(dy_n));
      }
      if (symmetric_as_printed(cfg)) return -pri.pi_n * mean_log(dy_n);
      return g_n_loss(prob(m.d_n, x_n), dy_n, pri.pi_n);
    }
    case NetId::kGy: {
      GyLossInputs in{dy_p, dy_n, std::nullopt, std::nullopt};
      if (cfg.gy_mode == GyLossMode::kEq4) {
        in.target_gp = prob(m.d_y, with_constant_label(x_p, 1.0));
        in.target_gn = prob(m.d_y, with_constant_label(x_n, 0.0));
      }
      return g_y_loss(in, pri, cfg.gy_mode);
    }
    default:
      throw std::invalid_argument("generator_value: not a generator");
  }
}

void TrainConfig::validate() const {
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (eval_every < 0) throw std::invalid_argument("eval_every must be >= 0");
  if (similarity_sample_cap < 1) throw std::invalid_argument("similarity_sample_cap must be >= 1");
  for (double lr : {learning_rates.g_p, learning_rates.g_n, learning_rates.g_y,
                    learning_rates.d_p, learning_rates.d_n, learning_rates.d_y})
    if (!(lr > 0.0)) throw std::invalid_argument("learning rates must be positive");
  if (priors) priors->validate();
  if (loss.variant == VariantKind::kMlpBaseline)
    throw std::invalid_argument("the baseline variant is trained by baseline_train");
}

Eigen::MatrixXd generate(const NeuralNet& generator, int n, int noise_dim, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return nn::forward(generator, standard_normal(n, noise_dim, rng));
}

metrics::SimilarityTriple generated_similarity(const TriGanModel& m,
                                               const data::LabeledDataset& real,
                                               int sample_cap, uint64_t seed,
                                               metrics::Pairing pairing) {
  metrics::SimilarityTriple pooled;
  size_t total = 0;
  for (int label : {1, 0}) {
    const Eigen::MatrixXd pool = real.features(label);
    if (pool.rows() == 0) continue;
    const int n = static_cast<int>(std::min<Eigen::Index>(sample_cap, pool.rows()));
    const NeuralNet& g = label == 1 ? m.g_p : m.g_n;
    const Eigen::MatrixXd fake = generate(g, n, m.noise_dim, derive_seed(seed, label));
    const metrics::SimilarityReport r = metrics::similarity_report(
        pool, fake, static_cast<size_t>(sample_cap), derive_seed(seed, 10 + label), pairing);
    const double k = static_cast<double>(r.pairs);
    pooled.cosine += k * r.mean.cosine;
    pooled.manhattan += k * r.mean.manhattan;
    pooled.euclidean += k * r.mean.euclidean;
    total += r.pairs;
  }
  if (total == 0) throw std::invalid_argument("generated_similarity: no real samples");
  const double t = static_cast<double>(total);
  pooled.cosine /= t;
  pooled.manhattan /= t;
  pooled.euclidean /= t;
  return pooled;
}

TrainResult train(TriGanModel model, const data::LabeledDataset& train_set,
                  const data::LabeledDataset* validation, const TrainConfig& cfg) {
  cfg.validate();
  const Priors empirical = data::class_priors(train_set);
  if (train_set.dim() != model.sample_dim)
    throw std::invalid_argument("training data dimension does not match the model");
  model.priors = cfg.priors.value_or(empirical);
  model.validate();

  TrainResult result{std::move(model), {}};
  TriGanModel& m = result.model;
  if (cfg.iterations == 0) return result;

  auto make_opt = [&](const NeuralNet& net, double lr) {
    nn::OptimizerState s = nn::OptimizerState::for_net(net, cfg.optimizer, lr);
    s.beta1 = cfg.adam_beta1;
    s.beta2 = cfg.adam_beta2;
    return s;
  };
  const LearningRates& lr = cfg.learning_rates;
  nn::OptimizerState opt_dp = make_opt(m.d_p, lr.d_p), opt_dn = make_opt(m.d_n, lr.d_n),
                     opt_dy = make_opt(m.d_y, lr.d_y), opt_gp = make_opt(m.g_p, lr.g_p),
                     opt_gn = make_opt(m.g_n, lr.g_n), opt_gy = make_opt(m.g_y, lr.g_y);

  const Eigen::MatrixXd positives = train_set.features(1);
  const Eigen::MatrixXd negatives = train_set.features(0);
  const Eigen::MatrixXd everything = train_set.features();
  Eigen::VectorXd all_labels(everything.rows());
  for (size_t i = 0; i < train_set.size(); ++i)
    all_labels(static_cast<Eigen::Index>(i)) = train_set[i].label;

  Eigen::MatrixXd val_x;
  std::vector<int> val_y;
  if (validation && !validation->empty()) {
    val_x = validation->features();
    val_y = validation->labels();
  }

  std::mt19937_64 rng(derive_seed(cfg.seed, 100));
  // Every checkpoint is scored on the same generator noise.
  const uint64_t eval_seed = derive_seed(cfg.seed, 1000);
  const Eigen::Index mb = cfg.batch_size;
  result.telemetry.reserve(static_cast<size_t>(cfg.iterations));
  for (int it = 1; it <= cfg.iterations; ++it) {
    DiscriminatorBatches db;
    db.noise = standard_normal(mb, m.noise_dim, rng);
    db.positive = sample_rows(positives, mb, rng);
    db.negative = sample_rows(negatives, mb, rng);
    Eigen::VectorXi picked;
    db.mixed = sample_rows(everything, mb, rng, &picked);
    db.mixed_labels.resize(mb);
    for (Eigen::Index i = 0; i < mb; ++i) db.mixed_labels(i) = all_labels(picked(i));

    const DiscriminatorStep ds = discriminator_step(m, db, cfg.loss);
    nn::optimizer_step(m.d_p, ds.grad_p, opt_dp, nn::Direction::kAscend);
    nn::optimizer_step(m.d_n, ds.grad_n, opt_dn, nn::Direction::kAscend);
    nn::optimizer_step(m.d_y, ds.grad_y, opt_dy, nn::Direction::kAscend);

    GeneratorBatches gb{standard_normal(mb, m.noise_dim, rng), db.positive};
    const GeneratorStep gs = generator_step(m, gb, cfg.loss);
    nn::optimizer_step(m.g_p, gs.grad_p, opt_gp, nn::Direction::kDescend);
    nn::optimizer_step(m.g_n, gs.grad_n, opt_gn, nn::Direction::kDescend);
    nn::optimizer_step(m.g_y, gs.grad_y, opt_gy, nn::Direction::kDescend);

    metrics::MetricsRecord rec;
    rec.run = cfg.run_id;
    rec.iteration = it;
    rec.losses = ds.telemetry;
    if (cfg.eval_every > 0 && it % cfg.eval_every == 0) {
      if (!val_y.empty()) {
        const metrics::Prf prf = metrics::precision_recall_f1(classify_batch(m, val_x), val_y);
        rec.precision = prf.precision;
        rec.recall = prf.recall;
        rec.f1 = prf.f1;
      }
      rec.similarity = generated_similarity(m, train_set, cfg.similarity_sample_cap,
                                            eval_seed, cfg.pairing);
    }
    result.telemetry.push_back(std::move(rec));
  }
  return result;
}

Classification classify(const TriGanModel& m, const Eigen::VectorXd& x) {
  if (x.size() != m.sample_dim)
    throw std::invalid_argument("classify: sample has " + std::to_string(x.size()) +
                                " features, model expects " + std::to_string(m.sample_dim));
  const double score = nn::forward(m.g_y, Eigen::MatrixXd(x.transpose()))(0, 0);
  return {score, score >= 0.5 ? 1 : 0};
}

std::vector<int> classify_batch(const TriGanModel& m, const Eigen::MatrixXd& x) {
  if (x.cols() != m.sample_dim)
    throw std::invalid_argument("classify_batch: feature dimension mismatch");
  const Eigen::MatrixXd scores = nn::forward(m.g_y, x);
  std::vector<int> out(static_cast<size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) out[i] = scores(i, 0) >= 0.5 ? 1 : 0;
  return out;
}

std::vector<GradCheckEntry> check_all_gradients(uint64_t seed, int instances, double eps) {
  struct Setting {
    const char* label;
    LossConfig loss;
  };
  const std::array<Setting, 5> settings = {{
      {"proposed/alg1-line14", {VariantKind::kProposed, GyLossMode::kAlg1Line14}},
      {"proposed/eq4", {VariantKind::kProposed, GyLossMode::kEq4}},
      {"inverted", {VariantKind::kInvertedGenPu, GyLossMode::kAlg1Line14}},
      {"symmetric", {VariantKind::kSymmetricGenPu, GyLossMode::kAlg1Line14}},
      {"symmetric-intended", {VariantKind::kSymmetricGenPuIntended, GyLossMode::kAlg1Line14}},
  }};
  constexpr int kRows = 6;
  const ModelShape shape{3, 4, 8};

  std::vector<GradCheckEntry> out;
  for (const Setting& setting : settings)
    for (NetId id : kAllNets)
      out.push_back({std::string(setting.label) + "/" + net_name(id), 0.0});

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> prior(0.2, 0.8);
  uint64_t draw = 0;
  for (int inst = 0; inst < instances; ++inst) {
    TriGanModel m;
    DiscriminatorBatches db;
    GeneratorBatches gb;
    // Redraw instances with a rectifier input within ten steps of its kink.
    do {
      m = make_model(shape, Priors::from_positive(prior(rng)), derive_seed(seed, draw++));
      for (NetId id : kAllNets)
        for (nn::Layer& l : net_of(m, id).mutable_layers())
          l.bias = 0.1 * standard_normal(l.bias.size(), 1, rng);

      db.noise = standard_normal(kRows, shape.noise_dim, rng);
      db.positive = standard_normal(kRows, shape.sample_dim, rng).array() + 1.0;
      db.negative = standard_normal(kRows, shape.sample_dim, rng).array() - 1.0;
      db.mixed = standard_normal(kRows, shape.sample_dim, rng);
      db.mixed_labels = Eigen::VectorXd(kRows);
      for (int i = 0; i < kRows; ++i) db.mixed_labels(i) = i % 2;
      gb = {standard_normal(kRows, shape.noise_dim, rng), db.positive};
    } while (kink_margin(m, db, gb) < 10.0 * eps);

    size_t slot = 0;
    for (const Setting& setting : settings) {
      const DiscriminatorStep ds = discriminator_step(m, db, setting.loss);
      const GeneratorStep gs = generator_step(m, gb, setting.loss);
      for (NetId id : kAllNets) {
        const nn::ParamGrads* analytic = nullptr;
        switch (id) {
          case NetId::kGp: analytic = &gs.grad_p; break;
          case NetId::kGn: analytic = &gs.grad_n; break;
          case NetId::kGy: analytic = &gs.grad_y; break;
          case NetId::kDp: analytic = &ds.grad_p; break;
          case NetId::kDn: analytic = &ds.grad_n; break;
          case NetId::kDy: analytic = &ds.grad_y; break;
        }
        const std::vector<double> a = flatten(*analytic);
        const std::vector<double> fd = reference_gradient(m, db, gb, setting.loss, id, eps);
        double err = 0.0;
        for (size_t i = 0; i < a.size(); ++i) err = std::max(err, nn::relative_error(a[i], fd[i]));
        out[slot].max_relative_error = std::max(out[slot].max_relative_error, err);
        ++slot;
      }
    }
  }
  return out;
}

}  // namespace trigan
