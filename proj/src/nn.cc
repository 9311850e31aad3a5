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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace trigan::nn {
namespace {

void apply_activation(Activation a, Matrix& z) {
  switch (a) {
    case Activation::kRelu:
      z = z.cwiseMax(0.0);
      break;
    case Activation::kTanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::kLogistic:
      z = (1.0 / (1.0 + (-z.array()).exp()))
              .cwiseMax(kProbEpsilon)
              .cwiseMin(1.0 - kProbEpsilon)
              .matrix();
      break;
    case Activation::kIdentity:
      break;
  }
}

// d act / d z expressed through the activation output y.
Matrix activation_derivative(Activation a, const Matrix& y) {
  switch (a) {
    case Activation::kRelu:
      return (y.array() > 0.0).cast<double>().matrix();
    case Activation::kTanh:
      return (1.0 - y.array().square()).matrix();
    case Activation::kLogistic:
      return (y.array() * (1.0 - y.array())).matrix();
    case Activation::kIdentity:
      return Matrix::Ones(y.rows(), y.cols());
  }
  return Matrix();
}

bool finite(const Matrix& m) { return m.allFinite(); }
bool finite(const Vector& v) { return v.allFinite(); }

}  // namespace

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::kRelu:
      return "relu";
    case Activation::kTanh:
      return "tanh";
    case Activation::kLogistic:
      return "logistic";
    case Activation::kIdentity:
      return "identity";
  }
  return "identity";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  if (name == "logistic") return Activation::kLogistic;
  if (name == "identity") return Activation::kIdentity;
  throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

NeuralNet::NeuralNet(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("net needs at least one layer");
  for (size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = layers_[k];
    if (l.weight.rows() == 0 || l.weight.cols() == 0)
      throw std::invalid_argument("layer " + std::to_string(k) + " has an empty weight");
    if (l.bias.size() != l.weight.rows())
      throw std::invalid_argument("layer " + std::to_string(k) +
                                  ": bias length does not match weight rows");
    if (k > 0 && layers_[k - 1].weight.rows() != l.weight.cols())
      throw std::invalid_argument("layer " + std::to_string(k) +
                                  ": input dim does not chain with previous layer");
  }
}

int NeuralNet::input_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.front().weight.cols());
}

int NeuralNet::output_dim() const {
  return layers_.empty() ? 0 : static_cast<int>(layers_.back().weight.rows());
}

std::vector<int> NeuralNet::dims() const {
  std::vector<int> d;
  if (layers_.empty()) return d;
  d.push_back(input_dim());
  for (const Layer& l : layers_) d.push_back(static_cast<int>(l.weight.rows()));
  return d;
}

size_t NeuralNet::parameter_count() const {
  size_t n = 0;
  for (const Layer& l : layers_) n += l.weight.size() + l.bias.size();
  return n;
}

bool NeuralNet::all_finite() const {
  return std::all_of(layers_.begin(), layers_.end(), [](const Layer& l) {
    return finite(l.weight) && finite(l.bias);
  });
}

bool operator==(const NeuralNet& a, const NeuralNet& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (size_t k = 0; k < a.layers_.size(); ++k) {
    const Layer& x = a.layers_[k];
    const Layer& y = b.layers_[k];
    if (x.activation != y.activation || x.weight.rows() != y.weight.rows() ||
        x.weight.cols() != y.weight.cols() || x.weight != y.weight ||
        x.bias != y.bias)
      return false;
  }
  return true;
}

ParamGrads::ParamGrads(const NeuralNet& net) {
  layers_.reserve(net.layers().size());
  for (const Layer& l : net.layers()) {
    layers_.push_back({Matrix::Zero(l.weight.rows(), l.weight.cols()),
                       Vector::Zero(l.bias.size())});
  }
}

ParamGrads& ParamGrads::operator+=(const ParamGrads& other) {
  if (other.layers_.size() != layers_.size())
    throw std::invalid_argument("gradient layer count mismatch");
  for (size_t k = 0; k < layers_.size(); ++k) {
    layers_[k].weight += other.layers_[k].weight;
    layers_[k].bias += other.layers_[k].bias;
  }
  return *this;
}

ParamGrads& ParamGrads::operator*=(double s) {
  for (LayerGrad& g : layers_) {
    g.weight *= s;
    g.bias *= s;
  }
  return *this;
}

bool ParamGrads::all_finite() const {
  return std::all_of(layers_.begin(), layers_.end(), [](const LayerGrad& g) {
    return finite(g.weight) && finite(g.bias);
  });
}

bool ParamGrads::congruent_with(const NeuralNet& net) const {
  if (layers_.size() != net.layers().size()) return false;
  for (size_t k = 0; k < layers_.size(); ++k) {
    const Layer& l = net.layers()[k];
    if (layers_[k].weight.rows() != l.weight.rows() ||
        layers_[k].weight.cols() != l.weight.cols() ||
        layers_[k].bias.size() != l.bias.size())
      return false;
  }
  return true;
}

double ParamGrads::max_abs() const {
  double m = 0.0;
  for (const LayerGrad& g : layers_) {
    if (g.weight.size() > 0) m = std::max(m, g.weight.cwiseAbs().maxCoeff());
    if (g.bias.size() > 0) m = std::max(m, g.bias.cwiseAbs().maxCoeff());
  }
  return m;
}

NeuralNet net_init(std::span<const int> layer_dims,
                   std::span<const Activation> activations, uint64_t seed) {
  if (layer_dims.size() < 2)
    throw std::invalid_argument("net_init needs at least input and output dims");
  if (activations.size() != layer_dims.size() - 1)
    throw std::invalid_argument("net_init: expected " +
                                std::to_string(layer_dims.size() - 1) +
                                " activations, got " +
                                std::to_string(activations.size()));
  for (int d : layer_dims)
    if (d <= 0) throw std::invalid_argument("net_init: dims must be positive");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Layer> layers;
  for (size_t k = 0; k + 1 < layer_dims.size(); ++k) {
    const int in = layer_dims[k];
    const int out = layer_dims[k + 1];
    const double scale = 1.0 / std::sqrt(static_cast<double>(in));
    Layer l;
    l.weight.resize(out, in);
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) l.weight(r, c) = scale * normal(rng);
    l.bias = Vector::Zero(out);
    l.activation = activations[k];
    layers.push_back(std::move(l));
  }
  return NeuralNet(std::move(layers));
}

Matrix forward(const NeuralNet& net, const Matrix& batch) {
  ForwardCache cache;
  return forward(net, batch, cache);
}

Matrix forward(const NeuralNet& net, const Matrix& batch, ForwardCache& cache) {
  if (net.empty()) throw std::invalid_argument("forward on an empty net");
  if (batch.cols() != net.input_dim())
    throw std::invalid_argument("forward: batch has " + std::to_string(batch.cols()) +
                                " columns, net expects " +
                                std::to_string(net.input_dim()));
  if (!batch.allFinite()) throw std::invalid_argument("forward: non-finite input");

  cache.values.clear();
  cache.values.reserve(net.layers().size() + 1);
  cache.values.push_back(batch);
  for (const Layer& l : net.layers()) {
    Matrix z = cache.values.back() * l.weight.transpose();
    z.rowwise() += l.bias.transpose();
    apply_activation(l.activation, z);
    cache.values.push_back(std::move(z));
  }
  return cache.values.back();
}

BackwardResult backward(const NeuralNet& net, const ForwardCache& cache,
                        const Matrix& output_grad) {
  const auto& layers = net.layers();
  if (cache.values.size() != layers.size() + 1)
    throw std::invalid_argument("backward: cache does not match net depth");
  const Matrix& out = cache.output();
  if (output_grad.rows() != out.rows() || output_grad.cols() != out.cols())
    throw std::invalid_argument("backward: output gradient shape mismatch");

  BackwardResult result{ParamGrads(net), Matrix()};
  Matrix upstream = output_grad;
  for (size_t k = layers.size(); k-- > 0;) {
    const Layer& l = layers[k];
    Matrix delta =
        upstream.cwiseProduct(activation_derivative(l.activation, cache.values[k + 1]));
    LayerGrad& g = result.grads.layers()[k];
    g.weight = delta.transpose() * cache.values[k];
    g.bias = delta.colwise().sum().transpose();
    upstream = delta * l.weight;
  }
  result.input_grad = std::move(upstream);
  return result;
}

std::string_view optimizer_name(OptimizerKind k) {
  return k == OptimizerKind::kSgd ? "sgd" : "adam";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

OptimizerState OptimizerState::for_net(const NeuralNet& net, OptimizerKind kind,
                                       double learning_rate) {
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("learning rate must be positive");
  OptimizerState s;
  s.kind = kind;
  s.learning_rate = learning_rate;
  ParamGrads zeros(net);
  s.first_moment = zeros.layers();
  s.second_moment = zeros.layers();
  return s;
}

void optimizer_step(NeuralNet& net, const ParamGrads& grads,
                    OptimizerState& state, Direction direction) {
  if (!grads.congruent_with(net))
    throw std::invalid_argument("optimizer_step: gradient shape mismatch");
  if (!grads.all_finite())
    throw std::domain_error("optimizer_step: non-finite gradient, step rejected");
  const double sign = direction == Direction::kAscend ? 1.0 : -1.0;
  auto& layers = net.mutable_layers();

  if (state.kind == OptimizerKind::kSgd) {
    for (size_t k = 0; k < layers.size(); ++k) {
      layers[k].weight += sign * state.learning_rate * grads.layers()[k].weight;
      layers[k].bias += sign * state.learning_rate * grads.layers()[k].bias;
    }
    ++state.step;
    return;
  }

  if (state.first_moment.size() != layers.size()) {
    ParamGrads zeros(net);
    state.first_moment = zeros.layers();
    state.second_moment = zeros.layers();
  }
  const int64_t t = state.step + 1;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(t));
  const double b1 = state.beta1;
  const double b2 = state.beta2;
  auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    param.array() += sign * state.learning_rate * (m.array() / c1) /
                     ((v.array() / c2).sqrt() + state.epsilon);
  };
  for (size_t k = 0; k < layers.size(); ++k) {
    update(layers[k].weight, state.first_moment[k].weight,
           state.second_moment[k].weight, grads.layers()[k].weight);
    update(layers[k].bias, state.first_moment[k].bias, state.second_moment[k].bias,
           grads.layers()[k].bias);
  }
  state.step = t;
}

double relative_error(double analytic, double fd) {
  return std::abs(analytic - fd) / std::max({std::abs(analytic), std::abs(fd), 1e-12});
}

double max_relative_error(NeuralNet& net, const ParamGrads& analytic,
                          const std::function<double()>& loss, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("grad check eps must be positive");
  if (!analytic.congruent_with(net))
    throw std::invalid_argument("grad check: gradient shape mismatch");
  double worst = 0.0;
  auto probe = [&](double& param, double grad) {
    const double saved = param;
    param = saved + eps;
    const double up = loss();
    param = saved - eps;
    const double down = loss();
    param = saved;
    const double fd = (up - down) / (2.0 * eps);
    worst = std::max(worst, relative_error(grad, fd));
  };
  auto& layers = net.mutable_layers();
  for (size_t k = 0; k < layers.size(); ++k) {
    Layer& l = layers[k];
    const LayerGrad& g = analytic.layers()[k];
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) probe(l.weight(r, c), g.weight(r, c));
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) probe(l.bias(r), g.bias(r));
  }
  return worst;
}

double grad_check(const NeuralNet& net, const OutputLoss& loss,
                  const Matrix& batch, double eps) {
  ForwardCache cache;
  const Matrix out = forward(net, batch, cache);
  const BackwardResult analytic = backward(net, cache, loss.gradient(out));
  NeuralNet probe = net;
  return max_relative_error(
      probe, analytic.grads, [&] { return loss.value(forward(probe, batch)); }, eps);
}

}  // namespace trigan::nn
