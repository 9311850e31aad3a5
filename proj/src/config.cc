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

#include "trigan/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace trigan {
namespace {

using nlohmann::json;

std::string join(const std::vector<std::string>& lines) {
  std::string s = "invalid configuration:";
  for (const auto& l : lines) s += "\n  " + l;
  return s;
}

// Reads fields of one JSON object, recording problems instead of throwing.
class Reader {
 public:
  Reader(const json& obj, std::string prefix, std::vector<std::string>& errors)
      : obj_(obj), prefix_(std::move(prefix)), errors_(errors) {}

  std::string field(const std::string& key) const { return prefix_ + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& at(const std::string& key) const { return obj_.at(key); }
  void error(const std::string& key, const std::string& msg) const {
    errors_.push_back(field(key) + ": " + msg);
  }

  void integer(const std::string& key, int& out, int min) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_number_integer()) return error(key, "expected an integer");
    const long long x = v.get<long long>();
    if (x < min || x > 2147483647LL)
      return error(key, "must be an integer >= " + std::to_string(min));
    out = static_cast<int>(x);
  }

  void seed(const std::string& key, uint64_t& out) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (v.is_number_unsigned()) {
      out = v.get<uint64_t>();
    } else if (v.is_number_integer() && v.get<long long>() >= 0) {
      out = static_cast<uint64_t>(v.get<long long>());
    } else {
      error(key, "expected a non-negative integer");
    }
  }

  void number(const std::string& key, double& out, std::function<bool(double)> ok,
              const std::string& requirement) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_number()) return error(key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x) || !ok(x)) return error(key, requirement);
    out = x;
  }

  template <typename T>
  void choice(const std::string& key, T& out, std::function<T(std::string_view)> parse) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_string()) return error(key, "expected a string");
    try {
      out = parse(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      error(key, e.what());
    }
  }

  void text(const std::string& key, std::string& out) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_string()) return error(key, "expected a string");
    out = v.get<std::string>();
  }

  void numbers(const std::string& key, std::vector<double>& out) {
    seen_.push_back(key);
    if (!has(key)) return;
    const json& v = at(key);
    if (!v.is_array() || v.empty()) return error(key, "expected a non-empty array of numbers");
    std::vector<double> xs;
    for (const json& e : v) {
      if (!e.is_number() || !std::isfinite(e.get<double>()))
        return error(key, "expected a non-empty array of numbers");
      xs.push_back(e.get<double>());
    }
    out = std::move(xs);
  }

  // Marks a key handled by the caller.
  void claim(const std::string& key) { seen_.push_back(key); }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
        errors_.push_back(field(it.key()) + ": unknown key");
    }
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<std::string>& errors_;
  std::vector<std::string> seen_;
};

bool positive(double x) { return x > 0.0; }

void read_learning_rates(Reader& r, LearningRates& lr, std::vector<std::string>& errors) {
  r.claim("learning_rate");
  if (!r.has("learning_rate")) return;
  const json& v = r.at("learning_rate");
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) return r.error("learning_rate", "must be positive");
    lr = LearningRates::uniform(x);
    return;
  }
  if (!v.is_object())
    return r.error("learning_rate", "expected a number or an object of per-network rates");
  Reader sub(v, "learning_rate.", errors);
  const std::string positive_msg = "must be positive";
  sub.number("g_p", lr.g_p, positive, positive_msg);
  sub.number("g_n", lr.g_n, positive, positive_msg);
  sub.number("g_y", lr.g_y, positive, positive_msg);
  sub.number("d_p", lr.d_p, positive, positive_msg);
  sub.number("d_n", lr.d_n, positive, positive_msg);
  sub.number("d_y", lr.d_y, positive, positive_msg);
  sub.reject_unknown();
}

void read_data(Reader& r, DataSource& d, std::vector<std::string>& errors) {
  r.claim("data");
  if (!r.has("data")) return;
  const json& v = r.at("data");
  if (!v.is_object()) return r.error("data", "expected an object");
  Reader sub(v, "data.", errors);
  sub.choice<DataSourceKind>("source", d.kind, [](std::string_view s) {
    if (s == "toy") return DataSourceKind::kToy;
    if (s == "corpus") return DataSourceKind::kCorpus;
    if (s == "csv") return DataSourceKind::kCsv;
    throw std::invalid_argument("expected toy, corpus or csv");
  });
  sub.integer("n_per_class", d.n_per_class, 0);
  sub.numbers("mean_positive", d.mean_positive);
  sub.numbers("mean_negative", d.mean_negative);
  sub.number("covariance_scale", d.covariance_scale, positive, "must be positive");
  sub.text("path", d.path);
  sub.integer("embedding_dim", d.embedding_dim, 8);
  sub.reject_unknown();
}

void read_equilibrium(Reader& r, EquilibriumQuery& q, std::vector<std::string>& errors) {
  r.claim("equilibrium");
  if (!r.has("equilibrium")) return;
  const json& v = r.at("equilibrium");
  if (!v.is_object()) return r.error("equilibrium", "expected an object");
  Reader sub(v, "equilibrium.", errors);
  sub.numbers("p_p", q.p_p);
  sub.numbers("p_n", q.p_n);
  sub.number("pi_p", q.pi_p, [](double x) { return x >= 0.0 && x <= 1.0; },
             "must lie in [0, 1]");
  sub.number("grid_step", q.grid_step, [](double x) { return x > 0.0 && x <= 1.0; },
             "must lie in (0, 1]");
  sub.reject_unknown();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

void RunConfig::validate() const {
  std::vector<std::string> errors;
  TrainConfig t = train;
  if (t.loss.variant == VariantKind::kMlpBaseline) t.loss.variant = VariantKind::kProposed;
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    errors.push_back(std::string("train: ") + e.what());
  }
  if (noise_dim < 1) errors.push_back("noise_dim: must be >= 1");
  if (hidden < 1) errors.push_back("hidden: must be >= 1");
  if (repeats < 1) errors.push_back("repeats: must be >= 1");
  double total = 0.0;
  for (double f : split) {
    if (!(f >= 0.0)) errors.push_back("split: fractions must be non-negative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) errors.push_back("split: fractions must sum to 1");
  if (split[0] <= 0.0) errors.push_back("split: the training fraction must be positive");
  switch (data.kind) {
    case DataSourceKind::kToy:
      if (data.mean_positive.size() != data.mean_negative.size())
        errors.push_back("data.mean_negative: must have the same length as data.mean_positive");
      break;
    case DataSourceKind::kCorpus:
    case DataSourceKind::kCsv:
      if (data.path.empty()) errors.push_back("data.path: required for this source");
      break;
  }
  if (equilibrium.p_p.size() != equilibrium.p_n.size())
    errors.push_back("equilibrium.p_n: must have the same length as equilibrium.p_p");
  if (equilibrium.p_p.size() > kMaxEquilibriumSupport)
    errors.push_back("equilibrium.p_p: support size must be <= " +
                     std::to_string(kMaxEquilibriumSupport));
  if (out.empty()) errors.push_back("out: must not be empty");
  if (!errors.empty()) throw ConfigError(std::move(errors));
}

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("(document): ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"(document): expected a JSON object"});

  RunConfig cfg;
  std::vector<std::string> errors;
  Reader r(root, "", errors);
  TrainConfig& t = cfg.train;
  r.integer("iterations", t.iterations, 0);
  r.integer("batch_size", t.batch_size, 1);
  r.integer("noise_dim", cfg.noise_dim, 1);
  r.integer("hidden", cfg.hidden, 1);
  read_learning_rates(r, t.learning_rates, errors);
  r.choice<nn::OptimizerKind>("optimizer", t.optimizer, nn::parse_optimizer);
  r.number("adam_beta1", t.adam_beta1, [](double x) { return x >= 0.0 && x < 1.0; },
           "must lie in [0, 1)");
  r.number("adam_beta2", t.adam_beta2, [](double x) { return x >= 0.0 && x < 1.0; },
           "must lie in [0, 1)");
  r.seed("seed", t.seed);
  r.choice<VariantKind>("variant", t.loss.variant, parse_variant);
  r.choice<GyLossMode>("gy_loss", t.loss.gy_mode, parse_gy_loss_mode);
  r.integer("eval_every", t.eval_every, 0);
  r.integer("similarity_sample_cap", t.similarity_sample_cap, 1);
  r.choice<metrics::Pairing>("similarity_pairing", t.pairing, metrics::parse_pairing);

  r.claim("priors");
  if (r.has("priors") && !r.at("priors").is_null()) {
    const json& v = r.at("priors");
    if (!v.is_object()) {
      r.error("priors", "expected null or an object with pi_p");
    } else {
      Reader sub(v, "priors.", errors);
      double pi_p = -1.0;
      sub.number("pi_p", pi_p, [](double x) { return x >= 0.0 && x <= 1.0; },
                 "must lie in [0, 1]");
      sub.reject_unknown();
      if (!sub.has("pi_p")) errors.push_back("priors.pi_p: required");
      else if (pi_p >= 0.0) t.priors = Priors::from_positive(pi_p);
    }
  }

  r.claim("split");
  if (r.has("split")) {
    const json& v = r.at("split");
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
      r.error("split", "expected [train, validation, test] fractions");
    } else {
      for (size_t i = 0; i < 3; ++i) cfg.split[i] = v[i].get<double>();
    }
  }

  r.integer("repeats", cfg.repeats, 1);
  std::string out = cfg.out.string();
  r.text("out", out);
  cfg.out = out;
  std::string ckpt;
  r.text("checkpoint", ckpt);
  cfg.checkpoint = ckpt;
  r.choice<metrics::EmitFormat>("metrics_format", cfg.metrics_format, [](std::string_view s) {
    if (s == "csv") return metrics::EmitFormat::kCsv;
    if (s == "line-json") return metrics::EmitFormat::kLineJson;
    throw std::invalid_argument("expected csv or line-json");
  });
  read_data(r, cfg.data, errors);
  read_equilibrium(r, cfg.equilibrium, errors);

  r.claim("grad_check");
  if (r.has("grad_check")) {
    const json& v = r.at("grad_check");
    if (!v.is_object()) {
      r.error("grad_check", "expected an object");
    } else {
      Reader sub(v, "grad_check.", errors);
      sub.integer("instances", cfg.grad_check_instances, 1);
      sub.number("tolerance", cfg.grad_check_tolerance, positive, "must be positive");
      sub.reject_unknown();
    }
  }
  r.reject_unknown();
  if (!errors.empty()) throw ConfigError(std::move(errors));
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"(file): cannot open " + path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace trigan
