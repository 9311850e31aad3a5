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

#ifndef TRIGAN_RANDOM_H_
#define TRIGAN_RANDOM_H_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace trigan {

// splitmix64 finalizer; independent streams from one base seed.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Eigen::MatrixXd standard_normal(Eigen::Index rows, Eigen::Index cols,
                                       std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal(rng);
  return m;
}

// m rows drawn uniformly with replacement from `pool`.
inline Eigen::MatrixXd sample_rows(const Eigen::MatrixXd& pool, Eigen::Index m,
                                   std::mt19937_64& rng,
                                   Eigen::VectorXi* picked = nullptr) {
  std::uniform_int_distribution<Eigen::Index> pick(0, pool.rows() - 1);
  Eigen::MatrixXd out(m, pool.cols());
  if (picked) picked->resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index r = pick(rng);
    out.row(i) = pool.row(r);
    if (picked) (*picked)(i) = static_cast<int>(r);
  }
  return out;
}

}  // namespace trigan

#endif  // TRIGAN_RANDOM_H_
