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

#include "trigan/runner.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

#include "trigan/random.h"

namespace trigan {
namespace {

namespace fs = std::filesystem;

constexpr uint64_t kSplitStream = 8;
constexpr uint64_t kToyStream = 7;
constexpr int kProjectionRowsPerGroup = 500;
constexpr const char* kClassifierNet = "classifier";

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void prepare_out(const RunConfig& cfg) { fs::create_directories(cfg.out); }

const char* metrics_extension(metrics::EmitFormat f) {
  return f == metrics::EmitFormat::kCsv ? ".csv" : ".jsonl";
}

fs::path metrics_path(const RunConfig& cfg, const std::string& stem) {
  return cfg.out / (stem + metrics_extension(cfg.metrics_format));
}

BaselineConfig baseline_config(const RunConfig& cfg) {
  BaselineConfig b;
  b.iterations = cfg.train.iterations;
  b.batch_size = cfg.train.batch_size;
  b.hidden = cfg.hidden;
  b.learning_rate = cfg.train.learning_rates.g_y;
  b.optimizer = cfg.train.optimizer;
  b.seed = cfg.train.seed;
  b.eval_every = cfg.train.eval_every;
  b.run_id = cfg.train.run_id;
  return b;
}

std::vector<int> predict_checkpoint(const Checkpoint& c, const Eigen::MatrixXd& x) {
  auto it = c.nets.find(kClassifierNet);
  if (it != c.nets.end()) {
    if (it->second.input_dim() != x.cols())
      throw std::invalid_argument("checkpoint classifier expects " +
                                  std::to_string(it->second.input_dim()) + " features, data has " +
                                  std::to_string(x.cols()));
    return predict_labels(it->second, x);
  }
  return classify_batch(from_checkpoint(c), x);
}

// PCA of real and generated samples on shared axes.
std::string projection_csv(const TriGanModel& m, const data::LabeledDataset& real,
                           uint64_t seed) {
  struct Group {
    const char* name;
    Eigen::MatrixXd rows;
  };
  auto head = [](const Eigen::MatrixXd& x) {
    return Eigen::MatrixXd(x.topRows(std::min<Eigen::Index>(x.rows(), kProjectionRowsPerGroup)));
  };
  const std::vector<Group> groups = {
      {"real_positive", head(real.features(1))},
      {"real_negative", head(real.features(0))},
      {"generated_positive",
       generate(m.g_p, kProjectionRowsPerGroup, m.noise_dim, derive_seed(seed, 1))},
      {"generated_negative",
       generate(m.g_n, kProjectionRowsPerGroup, m.noise_dim, derive_seed(seed, 2))},
  };
  Eigen::Index total = 0;
  for (const Group& g : groups) total += g.rows.rows();
  Eigen::MatrixXd all(total, m.sample_dim);
  Eigen::Index at = 0;
  for (const Group& g : groups) {
    all.middleRows(at, g.rows.rows()) = g.rows;
    at += g.rows.rows();
  }
  const metrics::PcaProjection p = metrics::pca_project_2d(all);
  std::string out = "source,pc1,pc2\n";
  at = 0;
  for (const Group& g : groups) {
    for (Eigen::Index i = 0; i < g.rows.rows(); ++i, ++at)
      out += std::string(g.name) + "," + num(p.coords(at, 0)) + "," + num(p.coords(at, 1)) + "\n";
  }
  return out;
}

int cmd_train(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  Checkpoint ckpt;
  const RunSummary s = train_and_test(cfg, cfg.train.seed, &ckpt);
  checkpoint_save(ckpt, cfg.out / "checkpoint.json");
  metrics::emit(s.telemetry, metrics_path(cfg, "telemetry"), cfg.metrics_format);
  if (cfg.variant() != VariantKind::kMlpBaseline) {
    const data::Split sp = load_split(cfg, cfg.train.seed);
    write_file(cfg.out / "projection.csv",
               projection_csv(from_checkpoint(ckpt), sp.train, derive_seed(cfg.train.seed, 9)));
  }
  log << "trained " << variant_name(cfg.variant()) << " for " << cfg.train.iterations
      << " iterations; test precision " << num(s.test.precision) << " recall "
      << num(s.test.recall) << " f1 " << num(s.test.f1) << "\n";
  return 0;
}

int cmd_eval(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  const Checkpoint ckpt = checkpoint_load(cfg.checkpoint_path());
  const data::Split sp = load_split(cfg, cfg.train.seed);
  if (sp.test.empty()) throw std::invalid_argument("eval: the test split is empty");
  const std::vector<int> truth = sp.test.labels();
  const metrics::Prf prf =
      metrics::precision_recall_f1(predict_checkpoint(ckpt, sp.test.features()), truth);
  metrics::MetricsRecord rec;
  rec.precision = prf.precision;
  rec.recall = prf.recall;
  rec.f1 = prf.f1;
  const std::vector<metrics::MetricsRecord> recs = {rec};
  metrics::emit(recs, metrics_path(cfg, "eval"), cfg.metrics_format);
  log << "precision " << num(prf.precision) << " recall " << num(prf.recall) << " f1 "
      << num(prf.f1) << (prf.undefined ? " (undefined ratio set to 0)" : "") << "\n";
  return 0;
}

int cmd_gen_data(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  const data::LabeledDataset ds = load_data(cfg, cfg.train.seed);
  const data::Split sp = data::split(ds, cfg.split, derive_seed(cfg.train.seed, kSplitStream));
  data::save_dataset_csv(ds, cfg.out / "dataset.csv");
  data::save_dataset_csv(sp.train, cfg.out / "train.csv");
  data::save_dataset_csv(sp.validation, cfg.out / "validation.csv");
  data::save_dataset_csv(sp.test, cfg.out / "test.csv");
  log << "wrote " << ds.size() << " samples (" << ds.count(1) << " positive, " << ds.count(0)
      << " negative) of dimension " << ds.dim() << "\n";
  return 0;
}

int cmd_verify_equilibrium(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  const EquilibriumReport r = verify_equilibrium(cfg.equilibrium);
  write_file(cfg.out / "equilibrium.txt", r.to_text());
  write_file(cfg.out / "equilibrium.json", r.to_json());
  log << r.to_text();
  return r.passed ? 0 : 1;
}

int cmd_grad_check(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  const std::vector<GradCheckEntry> entries =
      check_all_gradients(cfg.train.seed, cfg.grad_check_instances);
  std::string csv = "network,max_relative_error,status\n";
  bool ok = true;
  double worst = 0.0;
  for (const GradCheckEntry& e : entries) {
    const bool pass = e.max_relative_error <= cfg.grad_check_tolerance;
    ok = ok && pass;
    worst = std::max(worst, e.max_relative_error);
    csv += e.label + "," + num(e.max_relative_error) + "," + (pass ? "pass" : "fail") + "\n";
    log << e.label << ": " << num(e.max_relative_error) << (pass ? "" : "  FAIL") << "\n";
  }
  write_file(cfg.out / "grad_check.csv", csv);
  log << "max relative error " << num(worst) << " (tolerance " << num(cfg.grad_check_tolerance)
      << ", " << cfg.grad_check_instances << " instances)\n";
  return ok ? 0 : 1;
}

int cmd_repeat(const RunConfig& cfg, std::ostream& log) {
  prepare_out(cfg);
  std::vector<metrics::MetricsRecord> finals, telemetry;
  for (int r = 0; r < cfg.repeats; ++r) {
    RunConfig run = cfg;
    run.train.seed = cfg.train.seed + static_cast<uint64_t>(r);
    run.train.run_id = r;
    const RunSummary s = train_and_test(run, cfg.train.seed);
    telemetry.insert(telemetry.end(), s.telemetry.begin(), s.telemetry.end());
    metrics::MetricsRecord rec;
    rec.run = r;
    rec.iteration = cfg.train.iterations;
    rec.precision = s.test.precision;
    rec.recall = s.test.recall;
    rec.f1 = s.test.f1;
    finals.push_back(rec);
    log << "run " << r << " (seed " << run.train.seed << "): precision " << num(s.test.precision)
        << " recall " << num(s.test.recall) << " f1 " << num(s.test.f1) << "\n";
  }
  metrics::emit(finals, metrics_path(cfg, "runs"), cfg.metrics_format);
  metrics::emit(telemetry, metrics_path(cfg, "telemetry"), cfg.metrics_format);
  const metrics::AggregateResult agg = metrics::aggregate(finals);
  std::string summary =
      "model,runs,precision_mean,precision_std,recall_mean,recall_std,f1_mean,f1_std\n";
  summary += std::string(variant_name(cfg.variant())) + "," + std::to_string(agg.runs) + "," +
             num(agg.precision.mean) + "," + num(agg.precision.std) + "," + num(agg.recall.mean) +
             "," + num(agg.recall.std) + "," + num(agg.f1.mean) + "," + num(agg.f1.std) + "\n";
  write_file(cfg.out / "summary.csv", summary);
  char line[160];
  std::snprintf(line, sizeof(line), "%s: precision %.2f ± %.3f  recall %.2f ± %.3f  f1 %.2f ± %.3f\n",
                std::string(variant_name(cfg.variant())).c_str(), agg.precision.mean,
                agg.precision.std, agg.recall.mean, agg.recall.std, agg.f1.mean, agg.f1.std);
  log << line;
  return 0;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::kTrain:
      return "train";
    case Command::kEval:
      return "eval";
    case Command::kGenData:
      return "gen-data";
    case Command::kVerifyEquilibrium:
      return "verify-equilibrium";
    case Command::kGradCheck:
      return "grad-check";
    case Command::kRepeat:
      return "repeat";
  }
  return "train";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::kTrain, Command::kEval, Command::kGenData,
                    Command::kVerifyEquilibrium, Command::kGradCheck, Command::kRepeat})
    if (command_name(c) == name) return c;
  throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

data::LabeledDataset load_data(const RunConfig& cfg, uint64_t seed) {
  const DataSource& d = cfg.data;
  switch (d.kind) {
    case DataSourceKind::kToy: {
      data::GaussianClassSpec spec;
      spec.mean_positive = Eigen::Map<const Eigen::VectorXd>(
          d.mean_positive.data(), static_cast<Eigen::Index>(d.mean_positive.size()));
      spec.mean_negative = Eigen::Map<const Eigen::VectorXd>(
          d.mean_negative.data(), static_cast<Eigen::Index>(d.mean_negative.size()));
      spec.covariance_scale = d.covariance_scale;
      return data::gaussian_mixture(d.n_per_class, spec, derive_seed(seed, kToyStream));
    }
    case DataSourceKind::kCorpus: {
      const data::ClaimCorpus corpus = data::load_claims(d.path);
      return data::embed_pairs(data::make_pairs(corpus.records), d.embedding_dim, seed).dataset;
    }
    case DataSourceKind::kCsv:
      return data::load_dataset_csv(d.path);
  }
  throw std::invalid_argument("unknown data source");
}

data::Split load_split(const RunConfig& cfg, uint64_t seed) {
  return data::split(load_data(cfg, seed), cfg.split, derive_seed(seed, kSplitStream));
}

RunSummary train_and_test(const RunConfig& cfg, uint64_t data_seed, Checkpoint* checkpoint_out) {
  cfg.validate();
  const data::Split sp = load_split(cfg, data_seed);
  RunSummary s;
  std::vector<int> predictions;
  if (cfg.variant() == VariantKind::kMlpBaseline) {
    BaselineResult b = baseline_train(sp.train, &sp.validation, baseline_config(cfg));
    if (!sp.test.empty()) predictions = predict_labels(b.classifier, sp.test.features());
    s.telemetry = std::move(b.telemetry);
    if (checkpoint_out) {
      checkpoint_out->nets = {{kClassifierNet, b.classifier}};
      checkpoint_out->meta = {{"sample_dim", static_cast<double>(sp.train.dim())}};
    }
  } else {
    const ModelShape shape{sp.train.dim(), cfg.noise_dim, cfg.hidden};
    const Priors priors = cfg.train.priors.value_or(data::class_priors(sp.train));
    TrainResult r = train(make_model(shape, priors, cfg.train.seed), sp.train, &sp.validation,
                          cfg.train);
    if (!sp.test.empty()) predictions = classify_batch(r.model, sp.test.features());
    s.telemetry = std::move(r.telemetry);
    if (checkpoint_out) *checkpoint_out = to_checkpoint(r.model);
  }
  if (!sp.test.empty()) {
    const std::vector<int> truth = sp.test.labels();
    s.test = metrics::precision_recall_f1(predictions, truth);
  }
  return s;
}

int run_command(Command command, const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  switch (command) {
    case Command::kTrain:
      return cmd_train(cfg, log);
    case Command::kEval:
      return cmd_eval(cfg, log);
    case Command::kGenData:
      return cmd_gen_data(cfg, log);
    case Command::kVerifyEquilibrium:
      return cmd_verify_equilibrium(cfg, log);
    case Command::kGradCheck:
      return cmd_grad_check(cfg, log);
    case Command::kRepeat:
      return cmd_repeat(cfg, log);
  }
  return 1;
}

}  // namespace trigan
