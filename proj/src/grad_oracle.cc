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

#include "trigan/grad_oracle.h"

#include <cmath>
#include <stdexcept>

namespace trigan {
namespace {

using Q = long double;
using Rows = std::vector<std::vector<Q>>;

struct QLayer {
  std::vector<std::vector<Q>> w;  // out x in
  std::vector<Q> b;
  nn::Activation act;
};
using QNet = std::vector<QLayer>;

QNet to_ext(const nn::NeuralNet& net) {
  QNet q;
  for (const nn::Layer& l : net.layers()) {
    QLayer ql{{}, {}, l.activation};
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      std::vector<Q> row;
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) row.push_back(l.weight(r, c));
      ql.w.push_back(row);
      ql.b.push_back(l.bias(r));
    }
    q.push_back(std::move(ql));
  }
  return q;
}

Rows to_rows(const Eigen::MatrixXd& x) {
  Rows out(static_cast<size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c) out[r].push_back(x(r, c));
  return out;
}

Q activate(Q z, nn::Activation a) {
  const Q lo = nn::kProbEpsilon;
  switch (a) {
    case nn::Activation::kRelu:
      return z > 0 ? z : Q(0);
    case nn::Activation::kTanh:
      return std::tanh(z);
    case nn::Activation::kLogistic: {
      const Q s = 1 / (1 + std::exp(-z));
      return s < lo ? lo : (s > 1 - lo ? 1 - lo : s);
    }
    case nn::Activation::kIdentity:
      return z;
  }
  return z;
}

Rows apply(const QNet& net, const Rows& x) {
  Rows cur = x;
  for (const QLayer& l : net) {
    Rows next(cur.size(), std::vector<Q>(l.w.size()));
    for (size_t i = 0; i < cur.size(); ++i) {
      for (size_t o = 0; o < l.w.size(); ++o) {
        Q z = l.b[o];
        for (size_t k = 0; k < cur[i].size(); ++k) z += l.w[o][k] * cur[i][k];
        next[i][o] = activate(z, l.act);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Q> scores(const QNet& net, const Rows& x) {
  const Rows out = apply(net, x);
  std::vector<Q> s;
  for (const auto& r : out) s.push_back(r[0]);
  return s;
}

Rows append(const Rows& x, const std::vector<Q>& col) {
  Rows out = x;
  for (size_t i = 0; i < out.size(); ++i) out[i].push_back(col[i]);
  return out;
}

Rows append(const Rows& x, Q v) { return append(x, std::vector<Q>(x.size(), v)); }

Q mean_log(const std::vector<Q>& p) {
  Q s = 0;
  for (Q v : p) s += std::log(v);
  return s / p.size();
}

Q mean_log1m(const std::vector<Q>& p) {
  Q s = 0;
  for (Q v : p) s += std::log(1 - v);
  return s / p.size();
}

struct QModel {
  QNet g_p, g_n, g_y, d_p, d_n, d_y;
  Q pi_p, pi_n;
};

QNet& pick(QModel& m, NetId id) {
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

struct QBatches {
  Rows d_noise, positive, negative, mixed;
  std::vector<Q> mixed_labels;
  Rows g_noise, g_positive;
};

Q evaluate(const QModel& m, const QBatches& b, const LossConfig& cfg, NetId id) {
  const bool as_printed = cfg.variant == VariantKind::kSymmetricGenPu;
  const bool inverted = cfg.variant == VariantKind::kInvertedGenPu;
  switch (id) {
    case NetId::kDp: {
      const Q w = as_printed ? Q(1) : m.pi_p;
      const Rows fake = apply(m.g_p, b.d_noise);
      return w * (mean_log(scores(m.d_p, b.positive)) + mean_log1m(scores(m.d_p, fake)));
    }
    case NetId::kDn: {
      if (as_printed) return 0;
      const Rows fake = apply(m.g_n, b.d_noise);
      const Rows& real = inverted ? b.positive : b.negative;
      return m.pi_n * (mean_log(scores(m.d_n, real)) + mean_log1m(scores(m.d_n, fake)));
    }
    case NetId::kDy: {
      const Rows xp = apply(m.g_p, b.d_noise);
      const Rows xn = apply(m.g_n, b.d_noise);
      const Q real = mean_log(scores(m.d_y, append(b.mixed, b.mixed_labels)));
      const Q on_p = mean_log1m(scores(m.d_y, append(xp, scores(m.g_y, xp))));
      const Q on_n = mean_log1m(scores(m.d_y, append(xn, scores(m.g_y, xn))));
      return m.pi_p * (real + m.pi_p * on_p + m.pi_n * on_n);
    }
    default:
      break;
  }

  const Rows xp = apply(m.g_p, b.g_noise);
  const Rows xn = apply(m.g_n, b.g_noise);
  const std::vector<Q> dy_p = scores(m.d_y, append(xp, scores(m.g_y, xp)));
  const std::vector<Q> dy_n = scores(m.d_y, append(xn, scores(m.g_y, xn)));
  switch (id) {
    case NetId::kGp: {
      const Q dp = mean_log(scores(m.d_p, xp));
      if (as_printed) return -dp - m.pi_p * mean_log(dy_p);
      return m.pi_p * (-dp - mean_log(dy_p));
    }
    case NetId::kGn: {
      if (as_printed) return -m.pi_n * mean_log(dy_n);
      if (inverted)
        return m.pi_n * (-mean_log(scores(m.d_n, b.g_positive)) -
                         mean_log1m(scores(m.d_n, xn)) - mean_log(dy_n));
      return m.pi_n * (-mean_log(scores(m.d_n, xn)) - mean_log(dy_n));
    }
    case NetId::kGy: {
      if (cfg.gy_mode == GyLossMode::kAlg1Line14)
        return -m.pi_p * mean_log(dy_p) - m.pi_n * mean_log(dy_n);
      const std::vector<Q> t_p = scores(m.d_y, append(xp, Q(1)));
      const std::vector<Q> t_n = scores(m.d_y, append(xn, Q(0)));
      auto term = [](const std::vector<Q>& t, const std::vector<Q>& d) {
        Q s = 0;
        for (size_t i = 0; i < t.size(); ++i)
          s += t[i] * std::log(d[i]) + (1 - t[i]) * std::log(1 - t[i]);
        return s / t.size();
      };
      return -(m.pi_p * term(t_p, dy_p) + m.pi_n * term(t_n, dy_n));
    }
    default:
      throw std::invalid_argument("unknown net id");
  }
}

QModel to_ext(const TriGanModel& m) {
  return {to_ext(m.g_p), to_ext(m.g_n), to_ext(m.g_y), to_ext(m.d_p),
          to_ext(m.d_n), to_ext(m.d_y), m.priors.pi_p,  m.priors.pi_n};
}

QBatches to_ext(const DiscriminatorBatches& db, const GeneratorBatches& gb) {
  QBatches q;
  q.d_noise = to_rows(db.noise);
  q.positive = to_rows(db.positive);
  q.negative = to_rows(db.negative);
  q.mixed = to_rows(db.mixed);
  for (Eigen::Index i = 0; i < db.mixed_labels.size(); ++i)
    q.mixed_labels.push_back(db.mixed_labels(i));
  q.g_noise = to_rows(gb.noise);
  q.g_positive = to_rows(gb.positive);
  return q;
}

}  // namespace

double reference_value(const TriGanModel& m, const DiscriminatorBatches& db,
                       const GeneratorBatches& gb, const LossConfig& cfg, NetId id) {
  return static_cast<double>(evaluate(to_ext(m), to_ext(db, gb), cfg, id));
}

std::vector<double> reference_gradient(const TriGanModel& m, const DiscriminatorBatches& db,
                                       const GeneratorBatches& gb, const LossConfig& cfg,
                                       NetId id, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("reference_gradient: eps must be positive");
  QModel q = to_ext(m);
  const QBatches b = to_ext(db, gb);
  QNet& net = pick(q, id);
  const Q h = eps;
  std::vector<double> out;
  auto probe = [&](Q& param) {
    const Q saved = param;
    param = saved + h;
    const Q up = evaluate(q, b, cfg, id);
    param = saved - h;
    const Q down = evaluate(q, b, cfg, id);
    param = saved;
    out.push_back(static_cast<double>((up - down) / (2 * h)));
  };
  for (QLayer& l : net) {
    for (auto& row : l.w)
      for (Q& w : row) probe(w);
    for (Q& bias : l.b) probe(bias);
  }
  return out;
}

std::vector<double> flatten(const nn::ParamGrads& g) {
  std::vector<double> out;
  for (const nn::LayerGrad& l : g.layers()) {
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out.push_back(l.weight(r, c));
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) out.push_back(l.bias(r));
  }
  return out;
}

}  // namespace trigan
