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

#include "trigan/equilibrium.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace trigan {
namespace {

void require_same_support(const DiscreteDist& a, const DiscreteDist& b, const char* where) {
  if (a.size() != b.size())
    throw std::invalid_argument(std::string(where) + ": support sizes differ (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
}

// x ln(x / y), zero when x is zero.
double xlog_ratio(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

// Optimal value of the two-player game at one support point.
double pair_term(double real, double fake) {
  const double s = real + fake;
  if (s <= 0.0) return 0.0;
  return xlog_ratio(real, s) + xlog_ratio(fake, s);
}

double optimal_pair_value(const std::vector<double>& real, const std::vector<double>& fake) {
  double v = 0.0;
  for (size_t i = 0; i < real.size(); ++i) v += pair_term(real[i], fake[i]);
  return v;
}

double v_star_raw(const std::vector<double>& p, const std::vector<double>& gp,
                  const std::vector<double>& gn, const Priors& pri) {
  double v = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double q = pri.pi_p * gp[i] + pri.pi_n * gn[i];
    const double s = p[i] + q;
    if (s <= 0.0) continue;
    v += xlog_ratio(p[i], s);
    if (q > 0.0) {
      const double lq = std::log(q / s);
      v += pri.pi_p * gp[i] * lq + pri.pi_n * gn[i] * lq;
    }
  }
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// All k-part compositions of n in lexicographic order, scaled by 1 / n.
std::vector<std::vector<double>> simplex_grid(size_t k, int n) {
  std::vector<std::vector<double>> out;
  std::vector<int> counts(k, 0);
  auto rec = [&](auto&& self, size_t idx, int left) -> void {
    if (idx + 1 == k) {
      counts[idx] = left;
      std::vector<double> pt(k);
      for (size_t j = 0; j < k; ++j) pt[j] = static_cast<double>(counts[j]) / n;
      out.push_back(std::move(pt));
      return;
    }
    for (int c = left; c >= 0; --c) {
      counts[idx] = c;
      self(self, idx + 1, left - c);
    }
  };
  rec(rec, 0, n);
  return out;
}

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string vec(const std::vector<double>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + ")";
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<double> mass) : mass_(std::move(mass)) {
  if (mass_.empty()) throw std::invalid_argument("distribution needs a non-empty support");
  for (double m : mass_)
    if (!std::isfinite(m) || m < 0.0)
      throw std::invalid_argument("distribution mass must be finite and non-negative");
  const double total = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("distribution mass sums to " + num(total) + ", not 1");
}

DiscreteDist DiscreteDist::vertex(size_t k, size_t i) {
  if (i >= k) throw std::invalid_argument("vertex index outside the support");
  std::vector<double> m(k, 0.0);
  m[i] = 1.0;
  return DiscreteDist(std::move(m));
}

double optimal_t_binary(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("optimal_t_binary: negative weight");
  if (a + b <= 0.0) throw std::invalid_argument("optimal_t_binary: a = b = 0 has no optimum");
  return a / (a + b);
}

double optimal_t_ternary(double a, double b, double c) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0))
    throw std::invalid_argument("optimal_t_ternary: negative weight");
  const double s = a + (b + c);
  if (s <= 0.0) throw std::invalid_argument("optimal_t_ternary: all weights zero");
  return a / s;
}

DiscriminatorVector optimal_discriminator(const DiscreteDist& real, const DiscreteDist& fake) {
  require_same_support(real, fake, "optimal_discriminator");
  DiscriminatorVector d;
  d.values.resize(real.size());
  d.undefined.resize(real.size());
  for (size_t i = 0; i < real.size(); ++i) {
    const double s = real[i] + fake[i];
    d.undefined[i] = s <= 0.0;
    const double t = d.undefined[i] ? 0.5 : real[i] / s;
    d.values[i] = std::clamp(t, kDiscriminatorEpsilon, 1.0 - kDiscriminatorEpsilon);
  }
  return d;
}

OptimalPair optimal_discriminators(const DiscreteDist& p_p, const DiscreteDist& p_gp,
                                   const DiscreteDist& p_n, const DiscreteDist& p_gn) {
  require_same_support(p_p, p_n, "optimal_discriminators");
  return {optimal_discriminator(p_p, p_gp), optimal_discriminator(p_n, p_gn)};
}

double value_fn(const DiscreteDist& real, const DiscreteDist& fake, const DiscriminatorVector& d) {
  require_same_support(real, fake, "value_fn");
  if (d.values.size() != real.size())
    throw std::invalid_argument("value_fn: discriminator length differs from the support");
  double v = 0.0;
  for (size_t i = 0; i < real.size(); ++i) {
    if (real[i] > 0.0) v += real[i] * std::log(d.values[i]);
    if (fake[i] > 0.0) v += fake[i] * std::log1p(-d.values[i]);
  }
  return v;
}

double v_star(const DiscreteDist& p, const DiscreteDist& p_gp, const DiscreteDist& p_gn,
              const Priors& priors) {
  priors.validate();
  require_same_support(p, p_gp, "v_star");
  require_same_support(p, p_gn, "v_star");
  return v_star_raw(p.mass(), p_gp.mass(), p_gn.mass(), priors);
}

double kl_divergence(const DiscreteDist& p, const DiscreteDist& q) {
  require_same_support(p, q, "kl_divergence");
  double v = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    v += p[i] * std::log(p[i] / q[i]);
  }
  return v;
}

double jsd(const DiscreteDist& p, const DiscreteDist& q) {
  require_same_support(p, q, "jsd");
  double v = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    const double m = 0.5 * (p[i] + q[i]);
    v += 0.5 * xlog_ratio(p[i], m) + 0.5 * xlog_ratio(q[i], m);
  }
  return std::max(v, 0.0);
}

DiscreteDist mixture(const DiscreteDist& a, const DiscreteDist& b, const Priors& priors) {
  priors.validate();
  require_same_support(a, b, "mixture");
  std::vector<double> m(a.size());
  for (size_t i = 0; i < a.size(); ++i) m[i] = priors.pi_p * a[i] + priors.pi_n * b[i];
  // Renormalize away rounding so the result passes validation.
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  for (double& x : m) x /= total;
  return DiscreteDist(std::move(m));
}

EquilibriumReport verify_equilibrium(const EquilibriumQuery& query) {
  const DiscreteDist p_p(query.p_p);
  const DiscreteDist p_n(query.p_n);
  require_same_support(p_p, p_n, "verify_equilibrium");
  const size_t k = p_p.size();
  if (k > kMaxEquilibriumSupport)
    throw std::invalid_argument("verify_equilibrium: support size " + std::to_string(k) +
                                " exceeds " + std::to_string(kMaxEquilibriumSupport));
  const Priors pri = Priors::from_positive(query.pi_p);
  pri.validate();
  if (!(query.grid_step > 0.0) || query.grid_step > 1.0)
    throw std::invalid_argument("verify_equilibrium: grid_step must lie in (0, 1]");
  const int n = static_cast<int>(std::lround(1.0 / query.grid_step));
  if (std::abs(n * query.grid_step - 1.0) > 1e-9)
    throw std::invalid_argument("verify_equilibrium: grid_step must divide 1");

  const std::vector<double> p = mixture(p_p, p_n, pri).mass();
  const std::vector<std::vector<double>> grid = simplex_grid(k, n);
  const double step = query.grid_step;
  const double tol = step / 2.0;

  EquilibriumReport r;
  r.query = query;
  r.grid_points = static_cast<int>(grid.size());

  std::vector<double> vp(grid.size()), vn(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    vp[i] = optimal_pair_value(p_p.mass(), grid[i]);
    vn[i] = optimal_pair_value(p_n.mass(), grid[i]);
  }

  double best_joint = std::numeric_limits<double>::infinity();
  size_t best_gp = 0, best_gn = 0;
  double grid_min = std::numeric_limits<double>::infinity();
  std::vector<double> all_v;
  all_v.reserve(grid.size() * grid.size());
  for (size_t a = 0; a < grid.size(); ++a) {
    for (size_t b = 0; b < grid.size(); ++b) {
      const double v = v_star_raw(p, grid[a], grid[b], pri);
      all_v.push_back(v);
      grid_min = std::min(grid_min, v);
      const double joint = vp[a] + vn[b] + v;
      if (joint < best_joint - 1e-12) {
        best_joint = joint;
        best_gp = a;
        best_gn = b;
      }
    }
  }
  r.pairs = static_cast<long long>(all_v.size());
  r.grid_min_v_star = grid_min;
  r.v_star_minimizers = std::count_if(all_v.begin(), all_v.end(),
                                      [&](double v) { return v <= grid_min + 1e-12; });
  r.non_unique = r.v_star_minimizers > 1;

  r.minimizer_gp = grid[best_gp];
  r.minimizer_gn = grid[best_gn];
  r.v_star_at_minimizer = v_star_raw(p, r.minimizer_gp, r.minimizer_gn, pri);
  r.matches_p_p = max_abs_diff(r.minimizer_gp, p_p.mass()) <= tol;
  r.matches_p_n = max_abs_diff(r.minimizer_gn, p_n.mass()) <= tol;
  std::vector<double> q(k);
  for (size_t i = 0; i < k; ++i)
    q[i] = pri.pi_p * r.minimizer_gp[i] + pri.pi_n * r.minimizer_gn[i];
  r.matches_mixture = max_abs_diff(p, q) <= tol;

  auto on_grid = [&](const std::vector<double>& d) {
    return std::all_of(d.begin(), d.end(), [&](double x) {
      return std::abs(x * n - std::round(x * n)) <= 1e-9 * n;
    });
  };
  r.target_on_grid = on_grid(p_p.mass()) && on_grid(p_n.mass());

  // Largest value one step from the target toward any vertex.
  double worst = kEquilibriumValue;
  for (size_t j = 0; j < k; ++j) {
    std::vector<double> gp(k), gn(k);
    for (size_t i = 0; i < k; ++i) {
      const double e = i == j ? 1.0 : 0.0;
      gp[i] = (1.0 - step) * p_p[i] + step * e;
      gn[i] = (1.0 - step) * p_n[i] + step * e;
    }
    worst = std::max(worst, v_star_raw(p, gp, gn, pri));
  }
  r.slack = worst - kEquilibriumValue;
  r.gap = std::abs(r.v_star_at_minimizer - kEquilibriumValue);
  r.lower_bound_holds = grid_min >= kEquilibriumValue - 1e-9;
  r.passed = r.matches_p_p && r.matches_p_n && r.matches_mixture &&
             r.gap <= r.slack + 1e-12 && r.lower_bound_holds;
  return r;
}

std::string EquilibriumReport::to_text() const {
  std::ostringstream o;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  o << "p_p: " << vec(query.p_p) << '\n'
    << "p_n: " << vec(query.p_n) << '\n'
    << "pi_p: " << num(query.pi_p) << '\n'
    << "grid_step: " << num(query.grid_step) << '\n'
    << "grid_points_per_simplex: " << grid_points << '\n'
    << "pairs_enumerated: " << pairs << '\n'
    << "minimizer_p_gp: " << vec(minimizer_gp) << '\n'
    << "minimizer_p_gn: " << vec(minimizer_gn) << '\n'
    << "p_gp_matches_p_p: " << yn(matches_p_p) << '\n'
    << "p_gn_matches_p_n: " << yn(matches_p_n) << '\n'
    << "mixture_matches_p: " << yn(matches_mixture) << '\n'
    << "target_on_grid: " << yn(target_on_grid) << '\n'
    << "value_at_minimizer: " << num(v_star_at_minimizer) << '\n'
    << "target_value: " << num(kEquilibriumValue) << '\n'
    << "gap: " << num(gap) << '\n'
    << "value_slack: " << num(slack) << '\n'
    << "grid_min_value: " << num(grid_min_v_star) << '\n'
    << "value_minimizers: " << v_star_minimizers << '\n'
    << "non_unique_minimizer: " << yn(non_unique) << '\n'
    << "lower_bound_holds: " << yn(lower_bound_holds) << '\n'
    << "status: " << (passed ? "PASS" : "FAIL") << '\n';
  return o.str();
}

std::string EquilibriumReport::to_json() const {
  nlohmann::ordered_json j;
  j["p_p"] = query.p_p;
  j["p_n"] = query.p_n;
  j["pi_p"] = query.pi_p;
  j["grid_step"] = query.grid_step;
  j["grid_points_per_simplex"] = grid_points;
  j["pairs_enumerated"] = pairs;
  j["minimizer_p_gp"] = minimizer_gp;
  j["minimizer_p_gn"] = minimizer_gn;
  j["p_gp_matches_p_p"] = matches_p_p;
  j["p_gn_matches_p_n"] = matches_p_n;
  j["mixture_matches_p"] = matches_mixture;
  j["target_on_grid"] = target_on_grid;
  j["value_at_minimizer"] = v_star_at_minimizer;
  j["target_value"] = kEquilibriumValue;
  j["gap"] = gap;
  j["value_slack"] = slack;
  j["grid_min_value"] = grid_min_v_star;
  j["value_minimizers"] = v_star_minimizers;
  j["non_unique_minimizer"] = non_unique;
  j["lower_bound_holds"] = lower_bound_holds;
  j["passed"] = passed;
  return j.dump(2) + "\n";
}

}  // namespace trigan
