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

// Reference values and central-difference gradients of the six training
// objectives, recomputed from scratch in extended (long double) precision.
// Shares no code with the training path beyond reading network parameters.

#ifndef TRIGAN_GRAD_ORACLE_H_
#define TRIGAN_GRAD_ORACLE_H_

#include <vector>

#include "trigan/tri_gan.h"

namespace trigan {

// The scalar network `id` ascends (discriminators, from `db`) or descends
// (generators, from `gb`).
double reference_value(const TriGanModel& m, const DiscriminatorBatches& db,
                       const GeneratorBatches& gb, const LossConfig& cfg, NetId id);

// Central differences of reference_value, one entry per parameter of net
// `id`: for each layer the weights row-major, then the biases.
std::vector<double> reference_gradient(const TriGanModel& m, const DiscriminatorBatches& db,
                                       const GeneratorBatches& gb, const LossConfig& cfg,
                                       NetId id, double eps = nn::kGradCheckEpsilon);

// ParamGrads in the same order as reference_gradient.
std::vector<double> flatten(const nn::ParamGrads& g);

}  // namespace trigan

#endif  // TRIGAN_GRAD_ORACLE_H_
