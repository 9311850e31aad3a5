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

#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "trigan/data.h"
#include "trigan/metrics.h"

namespace trigan {
namespace {

ProbVector v(std::initializer_list<double> xs) {
  ProbVector p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) p(i++) = x;
  return p;
}

ProbVector random_probs(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
  ProbVector p(n);
  for (Eigen::Index i = 0; i < n; ++i) p(i) = u(rng);
  return p;
}

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

const double kTwoLogHalf = 2.0 * std::log(0.5);

TEST(Variants, NamesRoundTrip) {
  for (VariantKind k : {VariantKind::kProposed, VariantKind::kInvertedGenPu,
                        VariantKind::kSymmetricGenPu, VariantKind::kSymmetricGenPuIntended,
                        VariantKind::kMlpBaseline})
    EXPECT_EQ(parse_variant(variant_name(k)), k);
  EXPECT_THROW(parse_variant("genpu"), std::invalid_argument);
  EXPECT_EQ(parse_symmetric_mode("as-printed"), SymmetricMode::kAsPrinted);
  EXPECT_EQ(parse_symmetric_mode("intended"), SymmetricMode::kIntended);
  EXPECT_THROW(parse_symmetric_mode("literal"), std::invalid_argument);
}

TEST(Inverted, AllHalves) {
  const InvertedValues r = inverted_losses({v({0.5}), v({0.5}), v({0.5}), v({0.5})});
  EXPECT_NEAR(r.positive_game, kTwoLogHalf, 1e-12);
  EXPECT_NEAR(r.negative_discriminator, kTwoLogHalf, 1e-12);
  EXPECT_NEAR(r.negated_generator, -kTwoLogHalf, 1e-12);
}

TEST(Inverted, PositiveGameWorkedExample) {
  const InvertedValues r = inverted_losses({v({0.5}), v({0.5}), v({0.8}), v({0.3})});
  EXPECT_NEAR(r.positive_game, -0.5798184952529422, 1e-12);
}

TEST(Inverted, GeneratorGameIsNegatedDiscriminatorGame) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const InvertedInputs in{random_probs(rng, 4), random_probs(rng, 4), random_probs(rng, 4),
                            random_probs(rng, 4)};
    const InvertedValues r = inverted_losses(in);
    EXPECT_NEAR(r.negated_generator, -r.negative_discriminator, 1e-12);
  }
}

TEST(Symmetric, AllHalvesEitherMode) {
  const SymmetricInputs in{v({0.5}), v({0.5}), v({0.5}), v({0.5})};
  for (SymmetricMode m : {SymmetricMode::kAsPrinted, SymmetricMode::kIntended}) {
    const auto [a, b] = symmetric_losses(in, m);
    EXPECT_NEAR(a, kTwoLogHalf, 1e-12);
    EXPECT_NEAR(b, kTwoLogHalf, 1e-12);
  }
}

TEST(Symmetric, AsPrintedValuesAgreeBitwise) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const SymmetricInputs in{random_probs(rng, 16), random_probs(rng, 16), random_probs(rng, 16),
                             random_probs(rng, 16)};
    const auto [a, b] = symmetric_losses(in, SymmetricMode::kAsPrinted);
    EXPECT_TRUE(bitwise_equal(a, b)) << a << " vs " << b;
  }
}

TEST(Symmetric, IntendedModeReadsNegativePair) {
  const SymmetricInputs in{v({0.8}), v({0.3}), v({0.6}), v({0.1})};
  const auto [a, b] = symmetric_losses(in, SymmetricMode::kIntended);
  EXPECT_NEAR(a, std::log(0.8) + std::log(0.7), 1e-12);
  EXPECT_NEAR(b, std::log(0.6) + std::log(0.9), 1e-12);
}

data::LabeledDataset toy(int n, uint64_t seed) {
  data::GaussianClassSpec spec{Eigen::Vector2d(2.0, 2.0), Eigen::Vector2d(-2.0, -2.0), 1.0};
  return data::gaussian_mixture(n, spec, seed);
}

TEST(Baseline, SeparableToyData) {
  const data::Split sp = data::split(toy(2000, 5), {0.8, 0.1, 0.1}, 6);
  BaselineConfig cfg;
  cfg.iterations = 1000;
  const BaselineResult r = baseline_train(sp.train, nullptr, cfg);
  const metrics::Prf prf =
      metrics::precision_recall_f1(predict_labels(r.classifier, sp.test.features()),
                                   sp.test.labels());
  EXPECT_GE(prf.f1, 0.95);
  EXPECT_EQ(r.telemetry.size(), 1000u);
}

TEST(Baseline, SameSeedSameClassifier) {
  const data::LabeledDataset ds = toy(200, 2);
  BaselineConfig cfg;
  cfg.iterations = 50;
  EXPECT_EQ(baseline_train(ds, nullptr, cfg).classifier,
            baseline_train(ds, nullptr, cfg).classifier);
}

TEST(Baseline, RejectsSingleClassData) {
  data::LabeledDataset ds(2);
  ds.add({Eigen::Vector2d(1.0, 1.0), 1});
  ds.add({Eigen::Vector2d(2.0, 1.0), 1});
  EXPECT_THROW(baseline_train(ds, nullptr, {}), std::invalid_argument);
}

TEST(Baseline, ValidationRecordsAtInterval) {
  const data::Split sp = data::split(toy(200, 3), {0.8, 0.1, 0.1}, 4);
  BaselineConfig cfg;
  cfg.iterations = 30;
  cfg.eval_every = 10;
  const BaselineResult r = baseline_train(sp.train, &sp.validation, cfg);
  int with_f1 = 0;
  for (const auto& rec : r.telemetry) with_f1 += rec.f1.has_value();
  EXPECT_EQ(with_f1, 3);
}

}  // namespace
}  // namespace trigan
