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

// Dense multilayer perceptrons with manual reverse-mode differentiation.
//
// Batches are row-major in the mathematical sense: a batch of m samples is an
// m x input_dim matrix and every layer computes act(X * W^T + 1 b^T).

#ifndef TRIGAN_NN_H_
#define TRIGAN_NN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace trigan::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Logistic outputs are clamped to [kProbEpsilon, 1 - kProbEpsilon].
inline constexpr double kProbEpsilon = 1e-7;

enum class Activation { kRelu, kTanh, kLogistic, kIdentity };

std::string_view activation_name(Activation a);
Activation parse_activation(std::string_view name);

struct Layer {
  Matrix weight;  // out x in
  Vector bias;    // out
  Activation activation = Activation::kIdentity;
};

class NeuralNet {
 public:
  NeuralNet() = default;
  // Validates that dimensions chain; throws std::invalid_argument otherwise.
  explicit NeuralNet(std::vector<Layer> layers);

  int input_dim() const;
  int output_dim() const;
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  std::vector<int> dims() const;
  size_t parameter_count() const;
  bool all_finite() const;
  bool empty() const { return layers_.empty(); }

  friend bool operator==(const NeuralNet& a, const NeuralNet& b);

 private:
  std::vector<Layer> layers_;
};

// Per-layer activations of one forward pass. values[0] is the input batch and
// values[k + 1] the (post-activation, post-clamp) output of layer k.
struct ForwardCache {
  std::vector<Matrix> values;
  const Matrix& output() const { return values.back(); }
};

struct LayerGrad {
  Matrix weight;
  Vector bias;
};

class ParamGrads {
 public:
  ParamGrads() = default;
  // Zero gradients shaped like `net`.
  explicit ParamGrads(const NeuralNet& net);

  std::vector<LayerGrad>& layers() { return layers_; }
  const std::vector<LayerGrad>& layers() const { return layers_; }

  ParamGrads& operator+=(const ParamGrads& other);
  ParamGrads& operator*=(double s);
  bool all_finite() const;
  bool congruent_with(const NeuralNet& net) const;
  double max_abs() const;

 private:
  std::vector<LayerGrad> layers_;
};

struct BackwardResult {
  ParamGrads grads;
  Matrix input_grad;  // dL/d(input batch), m x input_dim
};

// Weights ~ N(0, 1/fan_in), biases zero. Deterministic in `seed`.
NeuralNet net_init(std::span<const int> layer_dims,
                   std::span<const Activation> activations, uint64_t seed);

Matrix forward(const NeuralNet& net, const Matrix& batch);
Matrix forward(const NeuralNet& net, const Matrix& batch, ForwardCache& cache);

// Reverse pass for the scalar loss whose gradient w.r.t. the net output is
// `output_grad`. The logistic clamp is treated as the identity here.
BackwardResult backward(const NeuralNet& net, const ForwardCache& cache,
                        const Matrix& output_grad);

enum class OptimizerKind { kSgd, kAdam };
enum class Direction { kAscend, kDescend };

std::string_view optimizer_name(OptimizerKind k);
OptimizerKind parse_optimizer(std::string_view name);

struct OptimizerState {
  OptimizerKind kind = OptimizerKind::kAdam;
  double learning_rate = 1e-3;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<LayerGrad> first_moment;
  std::vector<LayerGrad> second_moment;
  int64_t step = 0;

  static OptimizerState for_net(const NeuralNet& net, OptimizerKind kind,
                                double learning_rate);
};

// Moves `net` along +grads (ascend) or -grads (descend). Throws and leaves
// both net and state untouched if any gradient is non-finite or shapes differ.
void optimizer_step(NeuralNet& net, const ParamGrads& grads,
                    OptimizerState& state, Direction direction);

// Loss on the net output: value and its gradient w.r.t. that output.
struct OutputLoss {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
};

inline constexpr double kGradCheckEpsilon = 1e-5;

// |analytic - fd| / max(|analytic|, |fd|, 1e-12).
double relative_error(double analytic, double fd);

// Max over parameters of |analytic - fd| / max(|analytic|, |fd|, 1e-12),
// with fd the central difference of `loss` (re-evaluated after each
// in-place perturbation of `net`). `net` is restored before returning.
double max_relative_error(NeuralNet& net, const ParamGrads& analytic,
                          const std::function<double()>& loss,
                          double eps = kGradCheckEpsilon);

double grad_check(const NeuralNet& net, const OutputLoss& loss,
                  const Matrix& batch, double eps = kGradCheckEpsilon);

}  // namespace trigan::nn

#endif  // TRIGAN_NN_H_
