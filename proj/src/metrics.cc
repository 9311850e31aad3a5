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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace trigan::metrics {
namespace {

double safe_ratio(double num, double den, bool& undefined) {
  if (den == 0.0) {
    undefined = true;
    return 0.0;
  }
  return num / den;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_cell(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw std::runtime_error("unparsable metrics cell '" + cell + "'");
  return v;
}

// Column order of kCsvHeader after run,iter.
std::array<std::optional<double>, 9> columns_of(const MetricsRecord& r) {
  std::array<std::optional<double>, 9> c;
  c[0] = r.precision;
  c[1] = r.recall;
  c[2] = r.f1;
  if (r.losses) {
    c[3] = r.losses->positive;
    c[4] = r.losses->negative;
    c[5] = r.losses->label;
  }
  if (r.similarity) {
    c[6] = r.similarity->cosine;
    c[7] = r.similarity->manhattan;
    c[8] = r.similarity->euclidean;
  }
  return c;
}

constexpr std::array<const char*, 9> kValueKeys = {
    "precision", "recall", "f1", "loss_pos", "loss_neg", "loss_label", "cos", "man", "euc"};

MetricsRecord record_from_columns(int run, long iter,
                                  const std::array<std::optional<double>, 9>& c) {
  MetricsRecord r;
  r.run = run;
  r.iteration = iter;
  r.precision = c[0];
  r.recall = c[1];
  r.f1 = c[2];
  if (c[3] || c[4] || c[5]) {
    if (!(c[3] && c[4] && c[5])) throw std::runtime_error("partial loss triple");
    r.losses = LossTriple{*c[3], *c[4], *c[5]};
  }
  if (c[6] || c[7] || c[8]) {
    if (!(c[6] && c[7] && c[8])) throw std::runtime_error("partial similarity triple");
    r.similarity = SimilarityTriple{*c[6], *c[7], *c[8]};
  }
  return r;
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (size_t i = 0; i < idx.size();) {
    size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

bool operator==(const MetricsRecord& a, const MetricsRecord& b) {
  return a.run == b.run && a.iteration == b.iteration && columns_of(a) == columns_of(b);
}

Prf prf_from_counts(long tp, long fp, long fn) {
  Prf out;
  out.precision = safe_ratio(static_cast<double>(tp), static_cast<double>(tp + fp), out.undefined);
  out.recall = safe_ratio(static_cast<double>(tp), static_cast<double>(tp + fn), out.undefined);
  out.f1 = safe_ratio(2.0 * out.precision * out.recall, out.precision + out.recall,
                      out.undefined);
  return out;
}

double f1_from(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

Prf precision_recall_f1(std::span<const int> predictions, std::span<const int> truth,
                        int positive_label) {
  if (predictions.size() != truth.size())
    throw std::invalid_argument("predictions and truth differ in length");
  if (predictions.empty()) throw std::invalid_argument("precision/recall of an empty set");
  long tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < truth.size(); ++i) {
    const bool pred_pos = predictions[i] == positive_label;
    const bool true_pos = truth[i] == positive_label;
    tp += pred_pos && true_pos;
    fp += pred_pos && !true_pos;
    fn += !pred_pos && true_pos;
  }
  return prf_from_counts(tp, fp, fn);
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("mean/std of no values");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

AggregateResult aggregate(std::span<const MetricsRecord> per_run) {
  if (per_run.empty()) throw std::invalid_argument("aggregate over zero runs");
  std::vector<double> p, r, f;
  for (const MetricsRecord& rec : per_run) {
    if (!rec.precision || !rec.recall || !rec.f1)
      throw std::invalid_argument("aggregate: run " + std::to_string(rec.run) +
                                  " lacks precision/recall/f1");
    p.push_back(*rec.precision);
    r.push_back(*rec.recall);
    f.push_back(*rec.f1);
  }
  AggregateResult out;
  out.runs = static_cast<int>(per_run.size());
  out.precision = mean_std(p);
  out.recall = mean_std(r);
  out.f1 = mean_std(f);
  out.single_run = per_run.size() == 1;
  return out;
}

std::string_view pairing_name(Pairing p) { return p == Pairing::kRandom ? "random" : "nearest"; }

Pairing parse_pairing(std::string_view name) {
  if (name == "nearest") return Pairing::kNearest;
  if (name == "random") return Pairing::kRandom;
  throw std::invalid_argument("unknown pairing rule '" + std::string(name) + "'");
}

double cosine_similarity(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

double manhattan_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().sum();
}

double euclidean_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm();
}

SimilarityReport similarity_report(const Eigen::MatrixXd& real,
                                   const Eigen::MatrixXd& generated, size_t n_cap,
                                   uint64_t seed, Pairing pairing) {
  if (real.rows() == 0 || generated.rows() == 0)
    throw std::invalid_argument("similarity_report needs nonempty real and generated sets");
  if (real.cols() != generated.cols())
    throw std::invalid_argument("similarity_report: dimension mismatch");

  const auto n_gen = static_cast<size_t>(generated.rows());
  const size_t n = std::min(n_cap, n_gen);
  if (n == 0) throw std::invalid_argument("similarity_report: sample cap is zero");

  std::mt19937_64 rng(seed);
  std::vector<size_t> pick(n_gen);
  std::iota(pick.begin(), pick.end(), size_t{0});
  for (size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<size_t> d(i, n_gen - 1);
    std::swap(pick[i], pick[d(rng)]);
  }
  std::uniform_int_distribution<Eigen::Index> any_real(0, real.rows() - 1);

  SimilarityReport rep;
  for (size_t i = 0; i < n; ++i) {
    const Eigen::VectorXd g = generated.row(static_cast<Eigen::Index>(pick[i])).transpose();
    Eigen::Index match = 0;
    if (pairing == Pairing::kNearest) {
      (real.rowwise() - g.transpose()).rowwise().squaredNorm().minCoeff(&match);
    } else {
      match = any_real(rng);
    }
    const Eigen::VectorXd r = real.row(match).transpose();
    rep.mean.cosine += cosine_similarity(g, r);
    rep.mean.manhattan += manhattan_distance(g, r);
    rep.mean.euclidean += euclidean_distance(g, r);
  }
  const double dn = static_cast<double>(n);
  rep.mean.cosine /= dn;
  rep.mean.manhattan /= dn;
  rep.mean.euclidean /= dn;
  rep.pairs = n;
  return rep;
}

PcaProjection pca_project_2d(const Eigen::MatrixXd& samples) {
  if (samples.rows() < 2) throw std::invalid_argument("PCA needs at least 2 samples");
  if (samples.cols() < 2) throw std::invalid_argument("PCA needs dimension >= 2");
  PcaProjection out;
  out.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - out.mean.transpose();
  const Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(samples.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw std::runtime_error("PCA eigendecomposition failed");

  const Eigen::Index d = cov.rows();
  out.eigenvalues = eig.eigenvalues().reverse();
  out.axes.resize(d, 2);
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd axis = eig.eigenvectors().col(d - 1 - k);
    Eigen::Index lead = 0;
    axis.cwiseAbs().maxCoeff(&lead);
    if (axis(lead) < 0.0) axis = -axis;
    out.axes.col(k) = axis;
  }
  const double scale = std::max(1.0, std::abs(out.eigenvalues(0)));
  if (out.eigenvalues(1) <= 1e-12 * scale) {
    out.rank_deficient = true;
    out.axes.col(1).setZero();
  }
  out.coords = centered * out.axes;
  return out;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least two points");
  const std::vector<double> rx = ranks(x);
  const std::vector<double> ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::string format_records(std::span<const MetricsRecord> records, EmitFormat format) {
  std::string out;
  if (format == EmitFormat::kCsv) {
    out += kCsvHeader;
    out += '\n';
    for (const MetricsRecord& r : records) {
      out += std::to_string(r.run) + ',' + std::to_string(r.iteration);
      for (const auto& c : columns_of(r)) {
        out += ',';
        if (c) out += shortest(*c);
      }
      out += '\n';
    }
    return out;
  }
  for (const MetricsRecord& r : records) {
    nlohmann::ordered_json j;
    j["run"] = r.run;
    j["iter"] = r.iteration;
    const auto cols = columns_of(r);
    for (size_t k = 0; k < cols.size(); ++k) {
      if (cols[k])
        j[kValueKeys[k]] = *cols[k];
      else
        j[kValueKeys[k]] = nullptr;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<MetricsRecord> parse_records(const std::string& text, EmitFormat format) {
  std::vector<MetricsRecord> out;
  std::istringstream in(text);
  std::string line;
  if (format == EmitFormat::kCsv) {
    if (!std::getline(in, line) || line != kCsvHeader)
      throw std::runtime_error("metrics CSV: unexpected header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells;
      size_t start = 0;
      while (true) {
        const size_t comma = line.find(',', start);
        cells.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (cells.size() != 11) throw std::runtime_error("metrics CSV: expected 11 columns");
      std::array<std::optional<double>, 9> c;
      for (size_t k = 0; k < 9; ++k) c[k] = parse_cell(cells[k + 2]);
      out.push_back(record_from_columns(std::stoi(cells[0]), std::stol(cells[1]), c));
    }
    return out;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    std::array<std::optional<double>, 9> c;
    for (size_t k = 0; k < 9; ++k) {
      if (j.contains(kValueKeys[k]) && !j[kValueKeys[k]].is_null())
        c[k] = j[kValueKeys[k]].get<double>();
    }
    out.push_back(record_from_columns(j.at("run").get<int>(), j.at("iter").get<long>(), c));
  }
  return out;
}

void emit(std::span<const MetricsRecord> records, const std::filesystem::path& path,
          EmitFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write metrics to '" + path.string() + "'");
  out << format_records(records, format);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<MetricsRecord> load_records(const std::filesystem::path& path,
                                        EmitFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open metrics file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_records(buf.str(), format);
}

}  // namespace trigan::metrics
