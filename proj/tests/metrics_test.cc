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


#include "trigan/metrics.h"

#include <cmath>
#include <filesystem>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "trigan/random.h"

namespace trigan::metrics {
namespace {

namespace fs = std::filesystem;

TEST(Prf, FromPrecisionAndRecall) {
  EXPECT_NEAR(f1_from(0.50, 0.93), 0.6503496503496504, 1e-12);
  EXPECT_NEAR(f1_from(0.50, 0.93), 0.65, 0.005);
  EXPECT_DOUBLE_EQ(f1_from(0.0, 0.0), 0.0);
}

TEST(Prf, FromPredictions) {
  const std::vector<int> truth = {1, 1, 1, 0, 0, 0};
  const std::vector<int> pred = {1, 1, 0, 1, 0, 0};
  const Prf p = precision_recall_f1(pred, truth);
  EXPECT_NEAR(p.precision, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.recall, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p.f1, 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(p.undefined);
  const std::vector<int> perfect = truth;
  EXPECT_DOUBLE_EQ(precision_recall_f1(perfect, truth).f1, 1.0);
}

TEST(Prf, UndefinedRatiosAreZeroAndFlagged) {
  const Prf p = prf_from_counts(0, 0, 3);
  EXPECT_TRUE(p.undefined);
  EXPECT_DOUBLE_EQ(p.precision, 0.0);
  EXPECT_DOUBLE_EQ(p.recall, 0.0);
  EXPECT_DOUBLE_EQ(p.f1, 0.0);
}

TEST(Prf, RejectsBadInput) {
  const std::vector<int> a = {1, 0}, b = {1};
  EXPECT_THROW(precision_recall_f1(a, b), std::invalid_argument);
  EXPECT_THROW(precision_recall_f1(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST(MeanStd, SampleDeviation) {
  const std::vector<double> v = {0.6, 0.7};
  const MeanStd m = mean_std(v);
  EXPECT_NEAR(m.mean, 0.65, 1e-15);
  EXPECT_NEAR(m.std, 0.07071067811865474, 1e-12);
  const std::vector<double> one = {0.4};
  EXPECT_DOUBLE_EQ(mean_std(one).std, 0.0);
  EXPECT_THROW(mean_std(std::vector<double>{}), std::invalid_argument);
}

TEST(Aggregate, OverRuns) {
  std::vector<MetricsRecord> runs(2);
  runs[0].precision = 0.5;
  runs[0].recall = 0.9;
  runs[0].f1 = 0.6;
  runs[1].precision = 0.5;
  runs[1].recall = 0.96;
  runs[1].f1 = 0.7;
  const AggregateResult a = aggregate(runs);
  EXPECT_EQ(a.runs, 2);
  EXPECT_FALSE(a.single_run);
  EXPECT_NEAR(a.f1.std, 0.07071067811865474, 1e-12);
  EXPECT_DOUBLE_EQ(a.precision.std, 0.0);
  EXPECT_TRUE(aggregate(std::span(runs).first(1)).single_run);
  runs[1].f1.reset();
  EXPECT_THROW(aggregate(runs), std::invalid_argument);
}

TEST(Distances, Basics) {
  const Eigen::Vector2d a(1.0, 0.0), b(0.0, 2.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, 3.0 * a), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, Eigen::Vector2d::Zero()), 0.0);
  EXPECT_DOUBLE_EQ(manhattan_distance(a, b), 3.0);
  EXPECT_DOUBLE_EQ(euclidean_distance(a, b), std::sqrt(5.0));
}

TEST(Similarity, IdenticalSetsUnderNearestPairing) {
  std::mt19937_64 rng(1);
  const Eigen::MatrixXd x = standard_normal(30, 3, rng);
  const SimilarityReport r = similarity_report(x, x, 100, 2);
  EXPECT_EQ(r.pairs, 30u);
  EXPECT_NEAR(r.mean.cosine, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.mean.euclidean, 0.0);
  EXPECT_DOUBLE_EQ(r.mean.manhattan, 0.0);
}

TEST(Similarity, CapAndDeterminism) {
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd real = standard_normal(40, 2, rng);
  const Eigen::MatrixXd gen = standard_normal(50, 2, rng);
  for (Pairing p : {Pairing::kNearest, Pairing::kRandom}) {
    const SimilarityReport a = similarity_report(real, gen, 10, 5, p);
    const SimilarityReport b = similarity_report(real, gen, 10, 5, p);
    EXPECT_EQ(a.pairs, 10u);
    EXPECT_EQ(a.mean.cosine, b.mean.cosine);
    EXPECT_EQ(a.mean.euclidean, b.mean.euclidean);
  }
  EXPECT_LE(similarity_report(real, gen, 50, 5, Pairing::kNearest).mean.euclidean,
            similarity_report(real, gen, 50, 5, Pairing::kRandom).mean.euclidean);
  EXPECT_THROW(similarity_report(real, Eigen::MatrixXd(0, 2), 10, 1), std::invalid_argument);
  EXPECT_THROW(similarity_report(real, Eigen::MatrixXd::Zero(3, 3), 10, 1), std::invalid_argument);
  EXPECT_EQ(parse_pairing(pairing_name(Pairing::kRandom)), Pairing::kRandom);
  EXPECT_THROW(parse_pairing("closest"), std::invalid_argument);
}

// Leading eigenvector of a symmetric matrix by power iteration.
Eigen::VectorXd power_iteration(const Eigen::MatrixXd& m) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m.rows());
  for (int i = 0; i < 5000; ++i) v = (m * v).normalized();
  return v;
}

TEST(Pca, AxesMatchPowerIteration) {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd mix(4, 4);
  mix << 3, 0, 0, 0, 1, 1.5, 0, 0, 0, 0.5, 0.7, 0, 0.2, 0, 0, 0.2;
  const Eigen::MatrixXd x = standard_normal(400, 4, rng) * mix.transpose();
  const PcaProjection p = pca_project_2d(x);

  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = centered.transpose() * centered / 400.0;
  const Eigen::VectorXd v1 = power_iteration(cov);
  const double l1 = v1.dot(cov * v1);
  const Eigen::MatrixXd deflated = cov - l1 * v1 * v1.transpose();
  const Eigen::VectorXd v2 = power_iteration(deflated);

  EXPECT_NEAR(std::abs(p.axes.col(0).dot(v1)), 1.0, 1e-9);
  EXPECT_NEAR(std::abs(p.axes.col(1).dot(v2)), 1.0, 1e-6);
  EXPECT_NEAR(p.eigenvalues(0), l1, 1e-9 * l1);
  EXPECT_FALSE(p.rank_deficient);
  EXPECT_LE((p.coords - centered * p.axes).cwiseAbs().maxCoeff(), 1e-12);
  for (Eigen::Index i = 1; i < p.eigenvalues.size(); ++i)
    EXPECT_GE(p.eigenvalues(i - 1), p.eigenvalues(i));
}

TEST(Pca, RankDeficientInput) {
  Eigen::MatrixXd x(5, 3);
  for (int i = 0; i < 5; ++i) x.row(i) = Eigen::RowVector3d(i, 2.0 * i, -i);
  const PcaProjection p = pca_project_2d(x);
  EXPECT_TRUE(p.rank_deficient);
  EXPECT_TRUE(p.axes.col(1).isZero(0.0));
  EXPECT_THROW(pca_project_2d(Eigen::MatrixXd::Zero(1, 3)), std::invalid_argument);
  EXPECT_THROW(pca_project_2d(Eigen::MatrixXd::Zero(4, 1)), std::invalid_argument);
}

TEST(Spearman, KnownValues) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> y = {5, 6, 7, 8, 7};
  EXPECT_NEAR(spearman_correlation(x, y), 0.8207826816681233, 1e-12);
  const std::vector<double> a = {1, 2, 3, 4, 5, 6};
  const std::vector<double> b = {2, 1, 4, 3, 6, 5};
  EXPECT_NEAR(spearman_correlation(a, b), 0.8285714285714286, 1e-12);
  const std::vector<double> rev = {5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman_correlation(x, rev), -1.0, 1e-15);
  const std::vector<double> flat = {1, 1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(spearman_correlation(x, flat), 0.0);
  EXPECT_THROW(spearman_correlation(x, a), std::invalid_argument);
}

std::vector<MetricsRecord> sample_records() {
  std::vector<MetricsRecord> recs(3);
  recs[0].run = 0;
  recs[0].iteration = 1;
  recs[0].losses = LossTriple{-1.3862943611198906, -0.1, 1.0 / 3.0};
  recs[1].run = 0;
  recs[1].iteration = 100;
  recs[1].losses = LossTriple{-1.2, -1.1, -0.9};
  recs[1].precision = 0.5;
  recs[1].recall = 0.93;
  recs[1].f1 = 0.6503496503496504;
  recs[1].similarity = SimilarityTriple{0.9999, 0.0123, 1e-300};
  recs[2].run = 4;
  recs[2].iteration = 2000;
  recs[2].f1 = 0.1;
  recs[2].precision = 0.2;
  recs[2].recall = 0.05;
  return recs;
}

TEST(Emit, RoundTripBothFormats) {
  const fs::path dir = fs::temp_directory_path() / "trigan_metrics_test";
  fs::create_directories(dir);
  const std::vector<MetricsRecord> recs = sample_records();
  for (EmitFormat f : {EmitFormat::kCsv, EmitFormat::kLineJson}) {
    const fs::path path = dir / (f == EmitFormat::kCsv ? "m.csv" : "m.jsonl");
    emit(recs, path, f);
    EXPECT_EQ(load_records(path, f), recs);
    EXPECT_EQ(parse_records(format_records(recs, f), f), recs);
  }
}

TEST(Emit, CsvLayout) {
  const std::string text = format_records(sample_records(), EmitFormat::kCsv);
  EXPECT_EQ(text.substr(0, kCsvHeader.size()), kCsvHeader);
  EXPECT_NE(text.find("\n4,2000,0.2,0.05,0.1,,,,,,\n"), std::string::npos) << text;
}

TEST(Emit, RejectsMalformedText) {
  EXPECT_THROW(parse_records("a,b\n1,2\n", EmitFormat::kCsv), std::runtime_error);
  EXPECT_THROW(parse_records(std::string(kCsvHeader) + "\n0,1,x,,,,,,,,\n", EmitFormat::kCsv),
               std::runtime_error);
  EXPECT_THROW(parse_records(std::string(kCsvHeader) + "\n0,1,,,,0.1,,,,,\n", EmitFormat::kCsv),
               std::runtime_error);
}

}  // namespace
}  // namespace trigan::metrics
