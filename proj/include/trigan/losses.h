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

// Value functions of the three adversarial games, evaluated on minibatches of
// (already clamped) discriminator probabilities. Logs are natural.

#ifndef TRIGAN_LOSSES_H_
#define TRIGAN_LOSSES_H_

#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace trigan {

using ProbVector = Eigen::VectorXd;

// Class priors; pi_p + pi_n == 1 within 1e-12, both non-negative.
struct Priors {
  double pi_p = 0.5;
  double pi_n = 0.5;

  // Throws std::invalid_argument when the pair is not a distribution.
  void validate() const;
  static Priors from_positive(double pi_p) { return {pi_p, 1.0 - pi_p}; }
};

// mean(log p) and mean(log(1 - p)) with their gradients w.r.t. p.
double mean_log(const ProbVector& p);
ProbVector mean_log_grad(const ProbVector& p);
double mean_log1m(const ProbVector& p);
ProbVector mean_log1m_grad(const ProbVector& p);

// mean(log d_real) + mean(log(1 - d_fake)); the quantity D_p / D_n ascend.
double gan_objective(const ProbVector& d_real, const ProbVector& d_fake);

// mean(log d_real) + pi_p mean(log(1 - d_on_gp)) + pi_n mean(log(1 - d_on_gn)).
double d_y_objective(const ProbVector& d_real_mixed, const ProbVector& d_on_gp,
                     const ProbVector& d_on_gn, const Priors& priors);

// pi * mean(-log d_pair - log d_y); non-saturating generator loss of the
// positive (or, with D_n and pi_n, negative) generator.
double g_pair_loss(const ProbVector& d_pair_on_fake, const ProbVector& d_y_on_fake,
                   double pi);
inline double g_p_loss(const ProbVector& d_p, const ProbVector& d_y, double pi_p) {
  return g_pair_loss(d_p, d_y, pi_p);
}
inline double g_n_loss(const ProbVector& d_n, const ProbVector& d_y, double pi_n) {
  return g_pair_loss(d_n, d_y, pi_n);
}

enum class GyLossMode { kAlg1Line14, kEq4 };

std::string_view gy_loss_mode_name(GyLossMode m);
GyLossMode parse_gy_loss_mode(std::string_view name);

struct GyLossInputs {
  // D_y on generated samples carrying the label G_y assigned to them.
  ProbVector d_y_on_gp;
  ProbVector d_y_on_gn;
  // Soft targets for the cross-entropy form: D_y on generated samples carrying
  // their generator's class. Required in kEq4 mode only.
  std::optional<ProbVector> target_gp;
  std::optional<ProbVector> target_gn;
};

// kAlg1Line14: -pi_p mean(log d_gp) - pi_n mean(log d_gn).
// kEq4: -L with L = sum_c pi_c mean(t_c log d_c + (1 - t_c) log(1 - t_c)).
double g_y_loss(const GyLossInputs& in, const Priors& priors, GyLossMode mode);

}  // namespace trigan

#endif  // TRIGAN_LOSSES_H_
