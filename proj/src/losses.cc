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

#include "trigan/losses.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trigan {
namespace {

void require_nonempty(const ProbVector& p, const char* what) {
  if (p.size() == 0) throw std::invalid_argument(std::string(what) + ": empty batch");
}

}  // namespace

void Priors::validate() const {
  if (!(pi_p >= 0.0) || !(pi_n >= 0.0))
    throw std::invalid_argument("priors must be non-negative");
  if (std::abs(pi_p + pi_n - 1.0) > 1e-12)
    throw std::invalid_argument("priors must sum to 1 (got " +
                                std::to_string(pi_p + pi_n) + ")");
}

double mean_log(const ProbVector& p) {
  require_nonempty(p, "mean_log");
  return p.array().log().mean();
}

ProbVector mean_log_grad(const ProbVector& p) {
  return (1.0 / (static_cast<double>(p.size()) * p.array())).matrix();
}

double mean_log1m(const ProbVector& p) {
  require_nonempty(p, "mean_log1m");
  return (1.0 - p.array()).log().mean();
}

ProbVector mean_log1m_grad(const ProbVector& p) {
  return (-1.0 / (static_cast<double>(p.size()) * (1.0 - p.array()))).matrix();
}

double gan_objective(const ProbVector& d_real, const ProbVector& d_fake) {
  require_nonempty(d_real, "gan_objective");
  require_nonempty(d_fake, "gan_objective");
  return mean_log(d_real) + mean_log1m(d_fake);
}

double d_y_objective(const ProbVector& d_real_mixed, const ProbVector& d_on_gp,
                     const ProbVector& d_on_gn, const Priors& priors) {
  priors.validate();
  require_nonempty(d_real_mixed, "d_y_objective");
  require_nonempty(d_on_gp, "d_y_objective");
  require_nonempty(d_on_gn, "d_y_objective");
  return mean_log(d_real_mixed) + priors.pi_p * mean_log1m(d_on_gp) +
         priors.pi_n * mean_log1m(d_on_gn);
}

double g_pair_loss(const ProbVector& d_pair_on_fake, const ProbVector& d_y_on_fake,
                   double pi) {
  require_nonempty(d_pair_on_fake, "generator loss");
  require_nonempty(d_y_on_fake, "generator loss");
  if (d_pair_on_fake.size() != d_y_on_fake.size())
    throw std::invalid_argument("generator loss: batch size mismatch");
  return pi * (-mean_log(d_pair_on_fake) - mean_log(d_y_on_fake));
}

std::string_view gy_loss_mode_name(GyLossMode m) {
  return m == GyLossMode::kEq4 ? "eq4" : "alg1-line14";
}

GyLossMode parse_gy_loss_mode(std::string_view name) {
  if (name == "alg1-line14") return GyLossMode::kAlg1Line14;
  if (name == "eq4") return GyLossMode::kEq4;
  throw std::invalid_argument("unknown g_y loss mode '" + std::string(name) +
                              "' (expected alg1-line14 or eq4)");
}

double g_y_loss(const GyLossInputs& in, const Priors& priors, GyLossMode mode) {
  priors.validate();
  require_nonempty(in.d_y_on_gp, "g_y_loss");
  require_nonempty(in.d_y_on_gn, "g_y_loss");
  if (mode == GyLossMode::kAlg1Line14)
    return -priors.pi_p * mean_log(in.d_y_on_gp) - priors.pi_n * mean_log(in.d_y_on_gn);

  if (!in.target_gp || !in.target_gn)
    throw std::invalid_argument("g_y_loss: eq4 mode needs D_y targets for both classes");
  const ProbVector& tp = *in.target_gp;
  const ProbVector& tn = *in.target_gn;
  if (tp.size() != in.d_y_on_gp.size() || tn.size() != in.d_y_on_gn.size())
    throw std::invalid_argument("g_y_loss: target/batch size mismatch");
  auto term = [](const ProbVector& t, const ProbVector& d) {
    return (t.array() * d.array().log() + (1.0 - t.array()) * (1.0 - t.array()).log())
        .mean();
  };
  const double likelihood =
      priors.pi_p * term(tp, in.d_y_on_gp) + priors.pi_n * term(tn, in.d_y_on_gn);
  return -likelihood;
}

}  // namespace trigan
