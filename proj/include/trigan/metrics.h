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

// Evaluation protocol: P/R/F1, aggregation over repeated runs, similarity of
// generated to real samples, a 2-D PCA view and telemetry files.

#ifndef TRIGAN_METRICS_H_
#define TRIGAN_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace trigan::metrics {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool undefined = false;  // some ratio was 0/0 and was set to 0
};

Prf precision_recall_f1(std::span<const int> predictions, std::span<const int> truth,
                        int positive_label = 1);
Prf prf_from_counts(long tp, long fp, long fn);
double f1_from(double precision, double recall);

struct LossTriple {
  double positive = 0.0;
  double negative = 0.0;
  double label = 0.0;
};

struct SimilarityTriple {
  double cosine = 0.0;
  double manhattan = 0.0;
  double euclidean = 0.0;
};

// One telemetry row; fields absent for an iteration are left empty.
struct MetricsRecord {
  int run = 0;
  long iteration = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<LossTriple> losses;
  std::optional<SimilarityTriple> similarity;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&);
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (R - 1 denominator)
};

struct AggregateResult {
  int runs = 0;
  MeanStd precision;
  MeanStd recall;
  MeanStd f1;
  bool single_run = false;
};

MeanStd mean_std(std::span<const double> values);

// Aggregates the P/R/F1 of one final record per run. Every record must carry
// all three metrics.
AggregateResult aggregate(std::span<const MetricsRecord> per_run);

enum class Pairing { kNearest, kRandom };
std::string_view pairing_name(Pairing p);
Pairing parse_pairing(std::string_view name);

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double manhattan_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
double euclidean_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct SimilarityReport {
  SimilarityTriple mean;
  size_t pairs = 0;
};

// Samples min(n_cap, rows(generated)) generated rows without replacement,
// pairs each with a real row (nearest under Euclidean distance, or uniformly
// random) and averages the three measures over the pairs.
SimilarityReport similarity_report(const Eigen::MatrixXd& real,
                                   const Eigen::MatrixXd& generated, size_t n_cap,
                                   uint64_t seed, Pairing pairing = Pairing::kNearest);

struct PcaProjection {
  Eigen::MatrixXd coords;       // n x 2
  Eigen::MatrixXd axes;         // dim x 2, unit columns
  Eigen::VectorXd eigenvalues;  // all covariance eigenvalues, descending
  Eigen::VectorXd mean;
  bool rank_deficient = false;  // second axis zeroed
};

// Covariance uses the 1/n normalization.
PcaProjection pca_project_2d(const Eigen::MatrixXd& samples);

double spearman_correlation(std::span<const double> x, std::span<const double> y);

enum class EmitFormat { kCsv, kLineJson };

inline constexpr std::string_view kCsvHeader =
    "run,iter,precision,recall,f1,loss_pos,loss_neg,loss_label,cos,man,euc";

std::string format_records(std::span<const MetricsRecord> records, EmitFormat format);
std::vector<MetricsRecord> parse_records(const std::string& text, EmitFormat format);
void emit(std::span<const MetricsRecord> records, const std::filesystem::path& path,
          EmitFormat format);
std::vector<MetricsRecord> load_records(const std::filesystem::path& path,
                                        EmitFormat format);

}  // namespace trigan::metrics

#endif  // TRIGAN_METRICS_H_
