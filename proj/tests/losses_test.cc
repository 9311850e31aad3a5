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
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace trigan {
namespace {

ProbVector v(std::initializer_list<double> xs) {
  ProbVector p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

const double kHalfLog = std::log(0.5);

TEST(GanObjective, SymmetricMidpoint) {
  EXPECT_NEAR(gan_objective(v({0.5}), v({0.5})), 2.0 * kHalfLog, 1e-12);
}

TEST(GanObjective, WorkedExample) {
  EXPECT_NEAR(gan_objective(v({0.8, 0.6}), v({0.3, 0.1})), -0.5980023173383796, 1e-12);
}

TEST(GanObjective, RejectsEmptyBatch) {
  EXPECT_THROW(gan_objective(ProbVector(), v({0.5})), std::invalid_argument);
}

TEST(DyObjective, AllHalvesGiveTwoLogHalf) {
  for (double pi : {0.1, 0.5, 0.9})
    EXPECT_NEAR(d_y_objective(v({0.5, 0.5}), v({0.5}), v({0.5}), Priors::from_positive(pi)),
                2.0 * kHalfLog, 1e-12);
}

TEST(DyObjective, WorkedExample) {
  EXPECT_NEAR(d_y_objective(v({0.9}), v({0.2}), v({0.4}), Priors::from_positive(0.7)),
              -0.41480868870757026, 1e-12);
}

TEST(DyObjective, RejectsPriorsNotSummingToOne) {
  EXPECT_THROW(d_y_objective(v({0.5}), v({0.5}), v({0.5}), Priors{0.6, 0.6}),
               std::invalid_argument);
  EXPECT_THROW(d_y_objective(v({0.5}), v({0.5}), v({0.5}), Priors{-0.1, 1.1}),
               std::invalid_argument);
}

TEST(GeneratorLoss, HalvesWithUnitPrior) {
  EXPECT_NEAR(g_p_loss(v({0.5}), v({0.5}), 1.0), -2.0 * kHalfLog, 1e-12);
}

TEST(GeneratorLoss, WorkedExample) {
  EXPECT_NEAR(g_p_loss(v({0.8}), v({0.6}), 0.7289), 0.5349901317159581, 1e-12);
  EXPECT_NEAR(g_n_loss(v({0.8}), v({0.6}), 0.7289), 0.5349901317159581, 1e-12);
}

TEST(GeneratorLoss, RejectsMismatchedBatches) {
  EXPECT_THROW(g_p_loss(v({0.5, 0.5}), v({0.5}), 0.5), std::invalid_argument);
}

TEST(GyLoss, LineFourteenWorkedExample) {
  const GyLossInputs in{v({0.8}), v({0.6}), std::nullopt, std::nullopt};
  EXPECT_NEAR(g_y_loss(in, Priors::from_positive(0.7289), GyLossMode::kAlg1Line14),
              0.30113416115588754, 1e-12);
}

TEST(GyLoss, LineFourteenAllHalves) {
  const GyLossInputs in{v({0.5, 0.5}), v({0.5}), std::nullopt, std::nullopt};
  EXPECT_NEAR(g_y_loss(in, Priors::from_positive(0.3), GyLossMode::kAlg1Line14), -kHalfLog,
              1e-12);
}

TEST(GyLoss, TargetWeightedWorkedExample) {
  const GyLossInputs in{v({0.7}), v({0.4}), v({0.9}), v({0.2})};
  EXPECT_NEAR(g_y_loss(in, Priors::from_positive(0.6), GyLossMode::kEq4), 0.47546877027703777,
              1e-12);
}

TEST(GyLoss, TargetWeightedNeedsTargets) {
  const GyLossInputs in{v({0.7}), v({0.4}), std::nullopt, std::nullopt};
  EXPECT_THROW(g_y_loss(in, {}, GyLossMode::kEq4), std::invalid_argument);
  const GyLossInputs bad{v({0.7}), v({0.4}), v({0.9, 0.9}), v({0.2})};
  EXPECT_THROW(g_y_loss(bad, {}, GyLossMode::kEq4), std::invalid_argument);
}

TEST(GyLoss, ModeNamesRoundTrip) {
  for (GyLossMode m : {GyLossMode::kAlg1Line14, GyLossMode::kEq4})
    EXPECT_EQ(parse_gy_loss_mode(gy_loss_mode_name(m)), m);
  EXPECT_THROW(parse_gy_loss_mode("eq5"), std::invalid_argument);
}

TEST(MeanLogGradients, MatchCentralDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  ProbVector p(5);
  for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = u(rng);
  const ProbVector g = mean_log_grad(p);
  const ProbVector g1m = mean_log1m_grad(p);
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    ProbVector up = p, down = p;
    up(i) += h;
    down(i) -= h;
    EXPECT_NEAR(g(i), (mean_log(up) - mean_log(down)) / (2 * h), 1e-6);
    EXPECT_NEAR(g1m(i), (mean_log1m(up) - mean_log1m(down)) / (2 * h), 1e-6);
  }
}

TEST(GanObjective, DiscriminatorPrefersTruth) {
  // Raising D on real data or lowering it on fakes never decreases the objective.
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.9);
  for (int t = 0; t < 100; ++t) {
    const ProbVector real = v({u(rng), u(rng)});
    const ProbVector fake = v({u(rng), u(rng)});
    const double base = gan_objective(real, fake);
    EXPECT_GE(gan_objective((real.array() + 0.05).matrix(), fake), base);
    EXPECT_GE(gan_objective(real, (fake.array() - 0.04).matrix()), base);
  }
}

}  // namespace
}  // namespace trigan
