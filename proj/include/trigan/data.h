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

// Datasets: synthetic Gaussian classes, a JSONL claim/evidence corpus and the
// claim-evidence pairing that turns it into labeled feature vectors.

#ifndef TRIGAN_DATA_H_
#define TRIGAN_DATA_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trigan/losses.h"

namespace trigan::data {

// 1 = supported (positive), 0 = refuted (negative).
struct Sample {
  Eigen::VectorXd features;
  int label = 0;
};

class LabeledDataset {
 public:
  LabeledDataset() = default;
  explicit LabeledDataset(int dim) : dim_(dim) {}
  // Throws if the sample dimension or label is invalid.
  void add(Sample s);

  int dim() const { return dim_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const std::vector<Sample>& samples() const { return samples_; }
  const Sample& operator[](size_t i) const { return samples_[i]; }

  size_t count(int label) const;
  // Features of every sample with `label` (or all samples), one per row.
  Eigen::MatrixXd features(int label) const;
  Eigen::MatrixXd features() const;
  std::vector<int> labels() const;

  friend bool operator==(const LabeledDataset& a, const LabeledDataset& b);

 private:
  int dim_ = 0;
  std::vector<Sample> samples_;
};

struct GaussianClassSpec {
  Eigen::VectorXd mean_positive;
  Eigen::VectorXd mean_negative;
  double covariance_scale = 1.0;  // isotropic variance of both classes
};

// n_per_class samples of each class, positives first. Deterministic in seed.
LabeledDataset gaussian_mixture(int n_per_class, const GaussianClassSpec& spec,
                                uint64_t seed);

enum class ClaimLabel { kSupported, kRefuted };

struct ClaimRecord {
  std::string claim;
  std::vector<std::string> evidence;
  ClaimLabel label = ClaimLabel::kSupported;
};

struct RejectedLine {
  int line = 0;
  std::string reason;
};

struct ClaimCorpus {
  std::vector<ClaimRecord> records;
  int skipped_other_label = 0;  // NOT ENOUGH INFO and any other label
  std::vector<RejectedLine> rejected;
};

// Parses one JSON object per line. Malformed lines throw std::runtime_error
// naming the line; kept records with no evidence are listed in `rejected`.
ClaimCorpus parse_claims(std::istream& in);
ClaimCorpus load_claims(const std::filesystem::path& path);

inline constexpr const char* kPairSeparator = " [SEP] ";

struct ClaimEvidencePair {
  std::string text;  // claim + kPairSeparator + evidence
  int label = 0;
};

std::vector<ClaimEvidencePair> make_pairs(const std::vector<ClaimRecord>& records);

struct EmbeddedPairs {
  LabeledDataset dataset;
  std::vector<size_t> empty_text_rows;  // rows left as zero vectors
};

// Hashed bag of words: lowercase, split on non-alphanumerics, FNV-1a of each
// token (salted with seed) picks a bucket, counts are L2-normalized.
Eigen::VectorXd embed_text(const std::string& text, int dim, uint64_t seed);
EmbeddedPairs embed_pairs(const std::vector<ClaimEvidencePair>& pairs, int dim,
                          uint64_t seed);

// Empirical label frequencies. Throws on an empty or single-class dataset.
Priors class_priors(const LabeledDataset& ds);
Priors class_priors(size_t n_positive, size_t n_negative);

struct Split {
  LabeledDataset train;
  LabeledDataset validation;
  LabeledDataset test;
};

// Seeded shuffle, then floor(f_val * n) validation and floor(f_test * n) test
// samples; the remainder goes to train.
Split split(const LabeledDataset& ds, const std::array<double, 3>& fractions,
            uint64_t seed);

// CSV with header "label,f_0,...,f_{d-1}".
void save_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset load_dataset_csv(const std::filesystem::path& path);

}  // namespace trigan::data

#endif  // TRIGAN_DATA_H_
