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

// JSON checkpoints of named nets:
//
//   {"version": 1,
//    "nets": {"Gp": {"dims": [...], "activations": [...],
//                    "weights": [[[...]...]...], "biases": [[...]...]}, ...},
//    "meta": {...}}            // optional, free-form numbers
//
// Doubles are written with 17 significant digits so a load reproduces every
// parameter bit for bit.

#ifndef TRIGAN_CHECKPOINT_H_
#define TRIGAN_CHECKPOINT_H_

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "trigan/nn.h"

namespace trigan {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  std::map<std::string, nn::NeuralNet> nets;
  std::map<std::string, double> meta;
};

void checkpoint_save(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint checkpoint_load(const std::filesystem::path& path);

std::string checkpoint_to_string(const Checkpoint& ckpt);
Checkpoint checkpoint_from_string(const std::string& text);

}  // namespace trigan

#endif  // TRIGAN_CHECKPOINT_H_
