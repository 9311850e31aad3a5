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

// Closed-form optimal discriminators and equilibrium values of the three
// games over finite discrete supports. Natural logarithms; 0 ln 0 = 0.

#ifndef TRIGAN_EQUILIBRIUM_H_
#define TRIGAN_EQUILIBRIUM_H_

#include <string>
#include <vector>

#include "trigan/losses.h"

namespace trigan {

// -2 ln 2: value of the game when generated and real distributions agree.
inline constexpr double kEquilibriumValue = -1.3862943611198906;

// Clamp applied to discriminator vectors.
inline constexpr double kDiscriminatorEpsilon = 1e-7;

class DiscreteDist {
 public:
  // Throws std::invalid_argument on negative or non-finite mass, an empty
  // support, or a total further than 1e-12 from 1.
  explicit DiscreteDist(std::vector<double> mass);

  size_t size() const { return mass_.size(); }
  double operator[](size_t i) const { return mass_[i]; }
  const std::vector<double>& mass() const { return mass_; }

  // Point mass on index i of a k-point support.
  static DiscreteDist vertex(size_t k, size_t i);

 private:
  std::vector<double> mass_;
};

struct DiscriminatorVector {
  std::vector<double> values;   // each in [eps, 1 - eps]
  std::vector<bool> undefined;  // both masses zero; value set to 0.5
};

// a / (a + b); throws when a = b = 0 or either is negative.
double optimal_t_binary(double a, double b);
// a / (a + b + c); symmetric in b and c.
double optimal_t_ternary(double a, double b, double c);

// Pointwise real / (real + fake), clamped to [eps, 1 - eps].
DiscriminatorVector optimal_discriminator(const DiscreteDist& real, const DiscreteDist& fake);

struct OptimalPair {
  DiscriminatorVector d_p;
  DiscriminatorVector d_n;
};
OptimalPair optimal_discriminators(const DiscreteDist& p_p, const DiscreteDist& p_gp,
                                   const DiscreteDist& p_n, const DiscreteDist& p_gn);

// sum real ln D + sum fake ln(1 - D).
double value_fn(const DiscreteDist& real, const DiscreteDist& fake, const DiscriminatorVector& d);

// Three-term value of the label game with the optimal D_y inserted:
// sum p ln(p / (p + q)) + pi_p p_gp ln(q / (p + q)) + pi_n p_gn ln(q / (p + q)),
// q = pi_p p_gp + pi_n p_gn. Points where p and q both vanish are skipped.
double v_star(const DiscreteDist& p, const DiscreteDist& p_gp, const DiscreteDist& p_gn,
              const Priors& priors);

double kl_divergence(const DiscreteDist& p, const DiscreteDist& q);
double jsd(const DiscreteDist& p, const DiscreteDist& q);

// Data mixture pi_p p_p + pi_n p_n.
DiscreteDist mixture(const DiscreteDist& a, const DiscreteDist& b, const Priors& priors);

struct EquilibriumQuery {
  std::vector<double> p_p = {1.0, 0.0};
  std::vector<double> p_n = {0.0, 1.0};
  double pi_p = 0.5;
  double grid_step = 0.05;
};

inline constexpr size_t kMaxEquilibriumSupport = 4;

struct EquilibriumReport {
  EquilibriumQuery query;
  int grid_points = 0;   // points per simplex
  long long pairs = 0;   // (p_gp, p_gn) combinations enumerated

  // Minimizer of the three games' summed optimal values.
  std::vector<double> minimizer_gp;
  std::vector<double> minimizer_gn;
  double v_star_at_minimizer = 0.0;
  bool matches_p_p = false;      // |p_gp - p_p|_inf <= step / 2
  bool matches_p_n = false;
  bool matches_mixture = false;  // |p - (pi_p p_gp + pi_n p_gn)|_inf <= step / 2
  bool target_on_grid = false;   // p_p and p_n are both grid points

  double grid_min_v_star = 0.0;
  long long v_star_minimizers = 0;  // grid points within 1e-12 of the minimum
  bool non_unique = false;

  double gap = 0.0;    // |v_star_at_minimizer + 2 ln 2|
  double slack = 0.0;  // worst value one grid step away from the target
  bool lower_bound_holds = false;  // grid_min_v_star >= -2 ln 2 - 1e-9
  bool passed = false;

  std::string to_text() const;
  std::string to_json() const;
};

// Enumerates both generators over the simplex grid. Throws on supports larger
// than kMaxEquilibriumSupport, mismatched supports, or a step that does not
// divide 1.
EquilibriumReport verify_equilibrium(const EquilibriumQuery& query);

}  // namespace trigan

#endif  // TRIGAN_EQUILIBRIUM_H_
