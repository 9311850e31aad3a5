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


#include "trigan/nn.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

namespace trigan::nn {
namespace {

NeuralNet single_layer(Matrix w, Vector b, Activation a) {
  return NeuralNet({Layer{std::move(w), std::move(b), a}});
}

std::vector<Activation> acts(std::initializer_list<Activation> a) { return a; }

TEST(NetInit, SameSeedSameParameters) {
  const std::vector<int> dims = {2, 4, 1};
  const auto a = acts({Activation::kRelu, Activation::kLogistic});
  EXPECT_EQ(net_init(dims, a, 7), net_init(dims, a, 7));
  EXPECT_FALSE(net_init(dims, a, 7) == net_init(dims, a, 8));
}

TEST(NetInit, BiasesStartAtZero) {
  const std::vector<int> dims = {3, 3};
  const NeuralNet net = net_init(dims, acts({Activation::kIdentity}), 1);
  EXPECT_TRUE(net.layers()[0].bias.isZero(0.0));
  EXPECT_EQ(net.dims(), dims);
}

TEST(NetInit, WeightScaleFollowsFanIn) {
  const std::vector<int> dims = {2, 8, 1};
  const auto a = acts({Activation::kRelu, Activation::kLogistic});
  double sum = 0.0, sq = 0.0;
  long n = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const NeuralNet net = net_init(dims, a, seed);
    const Matrix& w = net.layers()[0].weight;
    sum += w.sum();
    sq += w.squaredNorm();
    n += w.size();
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(sd, 1.0 / std::sqrt(2.0), 0.25 / std::sqrt(2.0));
}

TEST(NetInit, RejectsBadArguments) {
  const std::vector<int> one = {2};
  EXPECT_THROW(net_init(one, acts({}), 1), std::invalid_argument);
  const std::vector<int> dims = {2, 3};
  EXPECT_THROW(net_init(dims, acts({Activation::kRelu, Activation::kRelu}), 1),
               std::invalid_argument);
  const std::vector<int> zero = {2, 0};
  EXPECT_THROW(net_init(zero, acts({Activation::kRelu}), 1), std::invalid_argument);
}

TEST(Forward, ZeroWeightsGiveHalfUnderLogistic) {
  const NeuralNet net = single_layer(Matrix::Zero(1, 3), Vector::Zero(1), Activation::kLogistic);
  const Matrix out = forward(net, Matrix::Random(5, 3));
  for (Eigen::Index i = 0; i < out.rows(); ++i) EXPECT_DOUBLE_EQ(out(i, 0), 0.5);
}

TEST(Forward, IdentityLayerPassesInputThrough) {
  const NeuralNet net = single_layer(Matrix::Identity(3, 3), Vector::Zero(3), Activation::kIdentity);
  const Matrix x = Matrix::Random(4, 3);
  EXPECT_EQ(forward(net, x), x);
}

TEST(Forward, LogisticOfTwo) {
  const NeuralNet net = single_layer(Matrix::Ones(1, 1), Vector::Zero(1), Activation::kLogistic);
  const Matrix out = forward(net, Matrix::Constant(1, 1, 2.0));
  EXPECT_NEAR(out(0, 0), 0.8807970779778823, 1e-12);
}

TEST(Forward, LogisticOutputIsClamped) {
  const NeuralNet net = single_layer(Matrix::Ones(1, 1), Vector::Zero(1), Activation::kLogistic);
  Matrix x(2, 1);
  x << 1e4, -1e4;
  const Matrix out = forward(net, x);
  EXPECT_DOUBLE_EQ(out(0, 0), 1.0 - kProbEpsilon);
  EXPECT_DOUBLE_EQ(out(1, 0), kProbEpsilon);
}

TEST(Forward, RejectsWidthMismatchAndNonFiniteInput) {
  const NeuralNet net = single_layer(Matrix::Ones(1, 2), Vector::Zero(1), Activation::kIdentity);
  EXPECT_THROW(forward(net, Matrix::Ones(1, 3)), std::invalid_argument);
  Matrix x = Matrix::Ones(1, 2);
  x(0, 1) = std::nan("");
  EXPECT_THROW(forward(net, x), std::invalid_argument);
}

TEST(Backward, ZeroOutputGradientGivesZeroGradients) {
  const std::vector<int> dims = {3, 5, 2};
  const NeuralNet net = net_init(dims, acts({Activation::kTanh, Activation::kLogistic}), 3);
  ForwardCache cache;
  forward(net, Matrix::Random(4, 3), cache);
  const BackwardResult r = backward(net, cache, Matrix::Zero(4, 2));
  EXPECT_DOUBLE_EQ(r.grads.max_abs(), 0.0);
  EXPECT_TRUE(r.input_grad.isZero(0.0));
}

TEST(Backward, SquaredErrorOnLinearLayer) {
  Matrix w(1, 2);
  w << 0.5, -1.5;
  Vector b(1);
  b << 0.25;
  const NeuralNet net = single_layer(w, b, Activation::kIdentity);
  Matrix x(1, 2);
  x << 2.0, 3.0;
  const double y = 1.0;
  ForwardCache cache;
  const double yhat = forward(net, x, cache)(0, 0);
  const BackwardResult r = backward(net, cache, Matrix::Constant(1, 1, 2.0 * (yhat - y)));
  const double g = 2.0 * (yhat - y);
  EXPECT_NEAR(r.grads.layers()[0].weight(0, 0), g * 2.0, 1e-12);
  EXPECT_NEAR(r.grads.layers()[0].weight(0, 1), g * 3.0, 1e-12);
  EXPECT_NEAR(r.grads.layers()[0].bias(0), g, 1e-12);
  EXPECT_NEAR(r.input_grad(0, 0), g * 0.5, 1e-12);
  EXPECT_NEAR(r.input_grad(0, 1), g * -1.5, 1e-12);
}

OutputLoss sum_of_squares() {
  return {[](const Matrix& o) { return o.squaredNorm(); },
          [](const Matrix& o) { Matrix g = 2.0 * o; return g; }};
}

OutputLoss binary_cross_entropy(Vector y) {
  return {[y](const Matrix& o) {
            const auto p = o.col(0).array();
            return -(y.array() * p.log() + (1.0 - y.array()) * (1.0 - p).log()).mean();
          },
          [y](const Matrix& o) {
            const auto p = o.col(0).array();
            Matrix g(o.rows(), 1);
            g.col(0) = (-(y.array() / p) + (1.0 - y.array()) / (1.0 - p)) /
                       static_cast<double>(o.rows());
            return g;
          }};
}

TEST(GradCheck, LinearNetQuadraticLoss) {
  const std::vector<int> dims = {3, 2};
  const NeuralNet net = net_init(dims, acts({Activation::kIdentity}), 4);
  EXPECT_LE(grad_check(net, sum_of_squares(), Matrix::Random(5, 3)), 1e-7);
}

TEST(GradCheck, TanhLogisticNetCrossEntropy) {
  const std::vector<int> dims = {4, 8, 1};
  const NeuralNet net = net_init(dims, acts({Activation::kTanh, Activation::kLogistic}), 5);
  Vector y(6);
  y << 1, 0, 1, 1, 0, 0;
  EXPECT_LE(grad_check(net, binary_cross_entropy(y), Matrix::Random(6, 4)), 1e-4);
}

TEST(GradCheck, ReluNetCrossEntropy) {
  const std::vector<int> dims = {4, 8, 8, 1};
  const NeuralNet net = net_init(
      dims, acts({Activation::kRelu, Activation::kRelu, Activation::kLogistic}), 6);
  Vector y(6);
  y << 0, 1, 1, 0, 1, 0;
  EXPECT_LE(grad_check(net, binary_cross_entropy(y), Matrix::Random(6, 4)), 1e-4);
}

TEST(GradCheck, ConstantLossHasZeroError) {
  const std::vector<int> dims = {2, 3, 1};
  NeuralNet net = net_init(dims, acts({Activation::kRelu, Activation::kIdentity}), 1);
  for (Layer& l : net.mutable_layers()) {
    l.weight.setZero();
    l.bias.setZero();
  }
  const OutputLoss constant{[](const Matrix&) { return 3.0; },
                            [](const Matrix& o) { Matrix g = Matrix::Zero(o.rows(), o.cols()); return g; }};
  EXPECT_DOUBLE_EQ(grad_check(net, constant, Matrix::Random(3, 2)), 0.0);
}

TEST(GradCheck, RelativeErrorDefinition) {
  EXPECT_DOUBLE_EQ(relative_error(1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(2.0, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(relative_error(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(-1.0, 1.0), 2.0);
}

NeuralNet scalar_net(double w) {
  return single_layer(Matrix::Constant(1, 1, w), Vector::Zero(1), Activation::kIdentity);
}

ParamGrads scalar_grad(const NeuralNet& net, double g) {
  ParamGrads grads(net);
  grads.layers()[0].weight(0, 0) = g;
  return grads;
}

TEST(Optimizer, SgdDescendStep) {
  NeuralNet net = scalar_net(1.0);
  OptimizerState s = OptimizerState::for_net(net, OptimizerKind::kSgd, 0.1);
  optimizer_step(net, scalar_grad(net, 0.5), s, Direction::kDescend);
  EXPECT_DOUBLE_EQ(net.layers()[0].weight(0, 0), 0.95);
}

TEST(Optimizer, SgdAscendThenDescendRestores) {
  NeuralNet net = scalar_net(1.0);
  const NeuralNet before = net;
  OptimizerState s = OptimizerState::for_net(net, OptimizerKind::kSgd, 0.1);
  const ParamGrads g = scalar_grad(net, 0.5);
  optimizer_step(net, g, s, Direction::kAscend);
  EXPECT_DOUBLE_EQ(net.layers()[0].weight(0, 0), 1.05);
  optimizer_step(net, g, s, Direction::kDescend);
  EXPECT_EQ(net, before);
}

TEST(Optimizer, ZeroGradientLeavesParameters) {
  for (OptimizerKind k : {OptimizerKind::kSgd, OptimizerKind::kAdam}) {
    const std::vector<int> dims = {2, 3, 1};
    NeuralNet net = net_init(dims, acts({Activation::kRelu, Activation::kLogistic}), 2);
    const NeuralNet before = net;
    OptimizerState s = OptimizerState::for_net(net, k, 0.01);
    optimizer_step(net, ParamGrads(net), s, Direction::kDescend);
    EXPECT_EQ(net, before);
  }
}

TEST(Optimizer, AdamFirstStep) {
  NeuralNet net = scalar_net(1.0);
  OptimizerState s = OptimizerState::for_net(net, OptimizerKind::kAdam, 1e-3);
  optimizer_step(net, scalar_grad(net, 0.5), s, Direction::kDescend);
  // Bias-corrected moments equal g and g^2 after one step.
  EXPECT_NEAR(net.layers()[0].weight(0, 0), 1.0 - 1e-3 * 0.5 / (0.5 + 1e-8), 1e-15);
  EXPECT_EQ(s.step, 1);
}

TEST(Optimizer, NonFiniteGradientIsRejected) {
  for (OptimizerKind k : {OptimizerKind::kSgd, OptimizerKind::kAdam}) {
    NeuralNet net = scalar_net(1.0);
    OptimizerState s = OptimizerState::for_net(net, k, 0.1);
    optimizer_step(net, scalar_grad(net, 0.2), s, Direction::kDescend);
    const NeuralNet net_before = net;
    const OptimizerState s_before = s;
    EXPECT_THROW(optimizer_step(net, scalar_grad(net, std::nan("")), s, Direction::kDescend),
                 std::domain_error);
    EXPECT_EQ(net, net_before);
    EXPECT_EQ(s.step, s_before.step);
    for (size_t i = 0; i < s.first_moment.size(); ++i) {
      EXPECT_EQ(s.first_moment[i].weight, s_before.first_moment[i].weight);
      EXPECT_EQ(s.second_moment[i].weight, s_before.second_moment[i].weight);
    }
  }
}

TEST(Optimizer, ShapeMismatchIsRejected) {
  NeuralNet net = scalar_net(1.0);
  const std::vector<int> dims = {2, 1};
  const NeuralNet other = net_init(dims, acts({Activation::kIdentity}), 1);
  OptimizerState s = OptimizerState::for_net(net, OptimizerKind::kSgd, 0.1);
  EXPECT_THROW(optimizer_step(net, ParamGrads(other), s, Direction::kDescend),
               std::invalid_argument);
}

TEST(Names, RoundTrip) {
  for (Activation a : {Activation::kRelu, Activation::kTanh, Activation::kLogistic,
                       Activation::kIdentity})
    EXPECT_EQ(parse_activation(activation_name(a)), a);
  for (OptimizerKind k : {OptimizerKind::kSgd, OptimizerKind::kAdam})
    EXPECT_EQ(parse_optimizer(optimizer_name(k)), k);
  EXPECT_THROW(parse_activation("softmax"), std::invalid_argument);
  EXPECT_THROW(parse_optimizer("rmsprop"), std::invalid_argument);
}

}  // namespace
}  // namespace trigan::nn
