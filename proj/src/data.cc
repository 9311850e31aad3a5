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

#include "trigan/data.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace trigan::data {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// -1 for labels outside the binary task.
int parse_claim_label(const std::string& raw) {
  const std::string l = lower(raw);
  if (l == "supports" || l == "supported" || l == "true") return 1;
  if (l == "refutes" || l == "refuted" || l == "false") return 0;
  return -1;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void LabeledDataset::add(Sample s) {
  if (dim_ == 0) dim_ = static_cast<int>(s.features.size());
  if (s.features.size() != dim_)
    throw std::invalid_argument("sample has " + std::to_string(s.features.size()) +
                                " features, dataset expects " + std::to_string(dim_));
  if (s.label != 0 && s.label != 1) throw std::invalid_argument("label must be 0 or 1");
  if (!s.features.allFinite()) throw std::invalid_argument("non-finite sample feature");
  samples_.push_back(std::move(s));
}

size_t LabeledDataset::count(int label) const {
  return static_cast<size_t>(std::count_if(samples_.begin(), samples_.end(),
                                           [&](const Sample& s) { return s.label == label; }));
}

Eigen::MatrixXd LabeledDataset::features(int label) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(count(label)), dim_);
  Eigen::Index r = 0;
  for (const Sample& s : samples_)
    if (s.label == label) m.row(r++) = s.features.transpose();
  return m;
}

Eigen::MatrixXd LabeledDataset::features() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples_.size()), dim_);
  for (size_t i = 0; i < samples_.size(); ++i)
    m.row(static_cast<Eigen::Index>(i)) = samples_[i].features.transpose();
  return m;
}

std::vector<int> LabeledDataset::labels() const {
  std::vector<int> out;
  out.reserve(samples_.size());
  for (const Sample& s : samples_) out.push_back(s.label);
  return out;
}

bool operator==(const LabeledDataset& a, const LabeledDataset& b) {
  if (a.dim_ != b.dim_ || a.samples_.size() != b.samples_.size()) return false;
  for (size_t i = 0; i < a.samples_.size(); ++i) {
    if (a.samples_[i].label != b.samples_[i].label ||
        a.samples_[i].features != b.samples_[i].features)
      return false;
  }
  return true;
}

LabeledDataset gaussian_mixture(int n_per_class, const GaussianClassSpec& spec,
                                uint64_t seed) {
  if (n_per_class < 0) throw std::invalid_argument("n_per_class must be >= 0");
  const auto dim = spec.mean_positive.size();
  if (dim < 1 || spec.mean_negative.size() != dim)
    throw std::invalid_argument("class means must share a positive dimension");
  if (!(spec.covariance_scale > 0.0))
    throw std::invalid_argument("covariance scale must be positive");

  const double sd = std::sqrt(spec.covariance_scale);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  LabeledDataset ds(static_cast<int>(dim));
  for (int label : {1, 0}) {
    const Eigen::VectorXd& mean = label == 1 ? spec.mean_positive : spec.mean_negative;
    for (int i = 0; i < n_per_class; ++i) {
      Eigen::VectorXd x(dim);
      for (Eigen::Index j = 0; j < dim; ++j) x(j) = mean(j) + sd * normal(rng);
      ds.add({std::move(x), label});
    }
  }
  return ds;
}

ClaimCorpus parse_claims(std::istream& in) {
  ClaimCorpus corpus;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::runtime_error("claims line " + std::to_string(line_no) +
                               ": malformed JSON: " + e.what());
    }
    auto bad = [&](const std::string& why) {
      return std::runtime_error("claims line " + std::to_string(line_no) + ": " + why);
    };
    if (!j.is_object()) throw bad("expected an object");
    if (!j.contains("label") || !j["label"].is_string()) throw bad("missing string 'label'");
    if (!j.contains("claim") || !j["claim"].is_string()) throw bad("missing string 'claim'");

    const int label = parse_claim_label(j["label"].get<std::string>());
    if (label < 0) {
      ++corpus.skipped_other_label;
      continue;
    }
    ClaimRecord rec;
    rec.claim = j["claim"].get<std::string>();
    rec.label = label == 1 ? ClaimLabel::kSupported : ClaimLabel::kRefuted;
    if (j.contains("evidence")) {
      if (!j["evidence"].is_array()) throw bad("'evidence' must be an array");
      for (const auto& e : j["evidence"]) {
        if (!e.is_string()) throw bad("evidence entries must be strings");
        rec.evidence.push_back(e.get<std::string>());
      }
    }
    if (rec.evidence.empty()) {
      corpus.rejected.push_back({line_no, "kept record has no evidence"});
      continue;
    }
    corpus.records.push_back(std::move(rec));
  }
  return corpus;
}

ClaimCorpus load_claims(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open claims file '" + path.string() + "'");
  return parse_claims(in);
}

std::vector<ClaimEvidencePair> make_pairs(const std::vector<ClaimRecord>& records) {
  std::vector<ClaimEvidencePair> pairs;
  for (const ClaimRecord& r : records) {
    const int label = r.label == ClaimLabel::kSupported ? 1 : 0;
    for (const std::string& e : r.evidence)
      pairs.push_back({r.claim + kPairSeparator + e, label});
  }
  return pairs;
}

Eigen::VectorXd embed_text(const std::string& text, int dim, uint64_t seed) {
  if (dim < 8) throw std::invalid_argument("embedding dim must be >= 8");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  auto add_token = [&](const std::string& tok) {
    uint64_t h = 1469598103934665603ULL ^ seed;
    for (unsigned char c : tok) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    v(static_cast<Eigen::Index>(h % static_cast<uint64_t>(dim))) += 1.0;
  };
  std::string tok;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      tok.push_back(static_cast<char>(std::tolower(c)));
    } else if (!tok.empty()) {
      add_token(tok);
      tok.clear();
    }
  }
  if (!tok.empty()) add_token(tok);
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

EmbeddedPairs embed_pairs(const std::vector<ClaimEvidencePair>& pairs, int dim,
                          uint64_t seed) {
  EmbeddedPairs out{LabeledDataset(dim), {}};
  for (size_t i = 0; i < pairs.size(); ++i) {
    Eigen::VectorXd v = embed_text(pairs[i].text, dim, seed);
    if (v.isZero(0.0)) out.empty_text_rows.push_back(i);
    out.dataset.add({std::move(v), pairs[i].label});
  }
  return out;
}

Priors class_priors(size_t n_positive, size_t n_negative) {
  const size_t n = n_positive + n_negative;
  if (n == 0) throw std::invalid_argument("class priors of an empty dataset");
  if (n_positive == 0 || n_negative == 0)
    throw std::invalid_argument("dataset contains a single class; priors are degenerate");
  const double pi_p = static_cast<double>(n_positive) / static_cast<double>(n);
  return {pi_p, static_cast<double>(n_negative) / static_cast<double>(n)};
}

Priors class_priors(const LabeledDataset& ds) {
  return class_priors(ds.count(1), ds.count(0));
}

Split split(const LabeledDataset& ds, const std::array<double, 3>& fractions,
            uint64_t seed) {
  double total = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0) || !std::isfinite(f))
      throw std::invalid_argument("split fractions must be non-negative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");

  const size_t n = ds.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::mt19937_64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  const auto n_val = static_cast<size_t>(std::floor(fractions[1] * static_cast<double>(n)));
  const auto n_test = static_cast<size_t>(std::floor(fractions[2] * static_cast<double>(n)));
  const size_t n_train = n - n_val - n_test;

  Split s{LabeledDataset(ds.dim()), LabeledDataset(ds.dim()), LabeledDataset(ds.dim())};
  for (size_t i = 0; i < n; ++i) {
    const Sample& x = ds[order[i]];
    if (i < n_train)
      s.train.add(x);
    else if (i < n_train + n_val)
      s.validation.add(x);
    else
      s.test.add(x);
  }
  return s;
}

void save_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset '" + path.string() + "'");
  out << "label";
  for (int j = 0; j < ds.dim(); ++j) out << ",f_" << j;
  out << "\n";
  for (const Sample& s : ds.samples()) {
    out << s.label;
    for (Eigen::Index j = 0; j < s.features.size(); ++j)
      out << ',' << format_double(s.features(j));
    out << "\n";
  }
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

LabeledDataset load_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("label", 0) != 0)
    throw std::runtime_error(path.string() + ": missing 'label,f_0,...' header");
  const auto dim = static_cast<int>(std::count(line.begin(), line.end(), ','));
  LabeledDataset ds(dim);
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    try {
      while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": unparsable number");
    }
    if (values.size() != static_cast<size_t>(dim) + 1)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": wrong column count");
    Sample s;
    s.label = static_cast<int>(values[0]);
    s.features = Eigen::Map<Eigen::VectorXd>(values.data() + 1, dim);
    ds.add(std::move(s));
  }
  return ds;
}

}  // namespace trigan::data
