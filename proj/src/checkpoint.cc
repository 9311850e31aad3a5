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

#include "trigan/checkpoint.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace trigan {
namespace {

using nlohmann::json;

json net_to_json(const nn::NeuralNet& net) {
  json j;
  j["dims"] = net.dims();
  json acts = json::array();
  json weights = json::array();
  json biases = json::array();
  for (const nn::Layer& l : net.layers()) {
    acts.push_back(std::string(nn::activation_name(l.activation)));
    json w = json::array();
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) row.push_back(l.weight(r, c));
      w.push_back(std::move(row));
    }
    weights.push_back(std::move(w));
    json b = json::array();
    for (Eigen::Index r = 0; r < l.bias.size(); ++r) b.push_back(l.bias(r));
    biases.push_back(std::move(b));
  }
  j["activations"] = std::move(acts);
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j;
}

nn::NeuralNet net_from_json(const std::string& name, const json& j) {
  auto fail = [&](const std::string& what) -> CheckpointError {
    return CheckpointError("checkpoint net '" + name + "': " + what);
  };
  if (!j.is_object()) throw fail("not an object");
  for (const char* key : {"dims", "activations", "weights", "biases"})
    if (!j.contains(key)) throw fail(std::string("missing field '") + key + "'");
  const auto dims = j.at("dims").get<std::vector<int>>();
  const json& acts = j.at("activations");
  const json& weights = j.at("weights");
  const json& biases = j.at("biases");
  if (dims.size() < 2) throw fail("dims must list at least two sizes");
  const size_t n_layers = dims.size() - 1;
  if (acts.size() != n_layers || weights.size() != n_layers || biases.size() != n_layers)
    throw fail("layer count disagrees with dims");

  std::vector<nn::Layer> layers;
  for (size_t k = 0; k < n_layers; ++k) {
    const int in = dims[k];
    const int out = dims[k + 1];
    nn::Layer l;
    l.activation = nn::parse_activation(acts[k].get<std::string>());
    const json& w = weights[k];
    if (!w.is_array() || w.size() != static_cast<size_t>(out))
      throw fail("weight rows disagree with dims at layer " + std::to_string(k));
    l.weight.resize(out, in);
    for (int r = 0; r < out; ++r) {
      if (!w[r].is_array() || w[r].size() != static_cast<size_t>(in))
        throw fail("weight columns disagree with dims at layer " + std::to_string(k));
      for (int c = 0; c < in; ++c) l.weight(r, c) = w[r][c].get<double>();
    }
    const json& b = biases[k];
    if (!b.is_array() || b.size() != static_cast<size_t>(out))
      throw fail("bias length disagrees with dims at layer " + std::to_string(k));
    l.bias.resize(out);
    for (int r = 0; r < out; ++r) l.bias(r) = b[r].get<double>();
    layers.push_back(std::move(l));
  }
  nn::NeuralNet net(std::move(layers));
  if (!net.all_finite()) throw fail("non-finite parameter");
  return net;
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& ckpt) {
  json j;
  j["version"] = kCheckpointVersion;
  json nets = json::object();
  for (const auto& [name, net] : ckpt.nets) nets[name] = net_to_json(net);
  j["nets"] = std::move(nets);
  if (!ckpt.meta.empty()) j["meta"] = ckpt.meta;
  return j.dump(1) + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CheckpointError(std::string("checkpoint parse error: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("version") || !j.contains("nets"))
      throw CheckpointError("checkpoint missing 'version' or 'nets'");
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion)
      throw CheckpointError("checkpoint version " + std::to_string(version) +
                            " unsupported (expected " +
                            std::to_string(kCheckpointVersion) + ")");
    Checkpoint ckpt;
    for (const auto& [name, body] : j.at("nets").items())
      ckpt.nets.emplace(name, net_from_json(name, body));
    if (j.contains("meta")) ckpt.meta = j.at("meta").get<std::map<std::string, double>>();
    return ckpt;
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  }
}

void checkpoint_save(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot open '" + path.string() + "' for writing");
  out << checkpoint_to_string(ckpt);
  if (!out) throw CheckpointError("write to '" + path.string() + "' failed");
}

Checkpoint checkpoint_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_string(buf.str());
}

}  // namespace trigan
