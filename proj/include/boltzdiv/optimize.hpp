#pragma once

// Search for the division constant that maximizes total utility, plus the
// tools used to inspect that objective: sampled curves, a central-difference
// extremum check and the first-order small-beta diagnostic.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "boltzdiv/division.hpp"
#include "boltzdiv/model.hpp"
#include "boltzdiv/utility.hpp"

namespace boltzdiv {

struct SearchConfig {
  std::optional<double> beta_max;  // unset: see default_beta_max()
  int grid_points = 256;
  double refine_tol = 1e-6;
};

struct Optimum {
  double beta_star = 0.0;
  Allocation allocation;
  double total_utility = 0.0;
  bool boundary = false;    // beta_star is 0 or beta_max
  bool degenerate = false;  // U was constant over the grid
  double extremum_residual = 0.0;

  double beta_max = 0.0;
  std::size_t evaluations = 0;
  std::size_t refine_iterations = 0;
};

struct UtilitySample {
  double beta;
  double total_utility;
};

struct UtilityCurve {
  std::vector<UtilitySample> samples;

  /// First sample attaining the maximum.
  const UtilitySample& argmax() const {
    return *std::max_element(samples.begin(), samples.end(),
                             [](const auto& a, const auto& b) { return a.total_utility < b.total_utility; });
  }
};

struct SmallBetaReport {
  std::vector<double> slopes;         // C_j: marginal utility at the uniform share
  std::vector<double> contributions;  // E_j
  double mean_slope = 0.0;
  double mean_contribution = 0.0;
  double lhs = 0.0;  // (1/n) sum C_j E_j
  double rhs = 0.0;  // mean C * mean E
  bool predicts_interior_maximum = false;

  /// First-order rate dU/dbeta at beta = 0.
  double initial_slope(double cake_size) const { return cake_size * (lhs - rhs); }
};

/// Past 40 / (E_max - E_min) the top contributor already holds all but
/// e^-40 of the cake, so U has nothing left to say.
inline double default_beta_max(const DivisionProblem& problem) {
  const auto e = problem.contributions();
  if (e.empty()) return 1.0;
  const auto [lo, hi] = std::minmax_element(e.begin(), e.end());
  const double range = *hi - *lo;
  return range > 0.0 ? 40.0 / range : 1.0;
}

inline double total_utility_at(const DivisionProblem& problem, double beta) {
  return total_utility(allocate(problem, beta), problem.players);
}

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  std::size_t iterations = 0;
};

/// Golden-section maximization of `f` on [lo, hi], stopping once the bracket
/// is no wider than `tol`. Ties keep the left part of the bracket.
template <std::invocable<double> F>
GoldenResult golden_section_maximize(F&& f, double lo, double hi, double tol, std::size_t max_iterations = 500) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  while (hi - lo > tol && it < max_iterations) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
    }
    ++it;
  }
  return fc >= fd ? GoldenResult{c, fc, it} : GoldenResult{d, fd, it};
}

/// `points` evenly spaced values from 0 to beta_max inclusive.
inline std::vector<double> linear_grid(double beta_max, std::size_t points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "a grid needs at least 2 points");
  if (!(beta_max > 0.0) || !std::isfinite(beta_max)) {
    throw Error(ErrorCode::InvalidArgument, "beta_max must be positive and finite");
  }
  std::vector<double> g(points);
  for (std::size_t k = 0; k < points; ++k) {
    g[k] = beta_max * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  g.back() = beta_max;
  return g;
}

inline UtilityCurve utility_curve(const DivisionProblem& problem, std::span<const double> betas) {
  require_valid(problem);
  for (std::size_t k = 0; k < betas.size(); ++k) {
    if (!std::isfinite(betas[k]) || betas[k] < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "curve betas must be finite and nonnegative");
    }
    if (k > 0 && !(betas[k] > betas[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "curve betas must be strictly increasing");
    }
  }
  UtilityCurve curve;
  curve.samples.resize(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k) curve.samples[k] = {betas[k], total_utility_at(problem, betas[k])};
  return curve;
}

/// Central-difference estimate of dU/dbeta.
inline double verify_extremum(const DivisionProblem& problem, double beta, double h) {
  if (!(h > 0.0) || !(beta >= h)) throw Error(ErrorCode::InvalidArgument, "verify_extremum needs beta >= h > 0");
  return (total_utility_at(problem, beta + h) - total_utility_at(problem, beta - h)) / (2.0 * h);
}

inline Optimum optimize_beta(const DivisionProblem& problem, const SearchConfig& config = {}) {
  require_valid(problem);
  const double beta_max = config.beta_max.value_or(default_beta_max(problem));
  if (!(beta_max > 0.0) || !std::isfinite(beta_max)) {
    throw Error(ErrorCode::InvalidArgument, "beta_max must be positive and finite");
  }
  if (config.grid_points < 16) throw Error(ErrorCode::InvalidArgument, "grid_points must be >= 16");
  if (!(config.refine_tol > 0.0) || !(config.refine_tol < beta_max)) {
    throw Error(ErrorCode::InvalidArgument, "refine_tol must lie in (0, beta_max)");
  }

  Optimum opt;
  opt.beta_max = beta_max;
  auto objective = [&](double beta) {
    ++opt.evaluations;
    return total_utility_at(problem, beta);
  };

  // Grid values are stored by index, so the outcome does not depend on the
  // order in which they are produced.
  const auto grid = linear_grid(beta_max, static_cast<std::size_t>(config.grid_points));
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = objective(grid[k]);

  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double best_value = *hi_it;
  const double tie = 1e-12 * std::max(1.0, std::abs(best_value));

  double beta_star = 0.0;
  double u_star = values.front();
  if (best_value - *lo_it <= tie) {
    opt.degenerate = true;
  } else {
    std::size_t k = 0;
    while (values[k] < best_value - tie) ++k;
    beta_star = grid[k];
    u_star = values[k];
    const double lo = grid[k == 0 ? 0 : k - 1];
    const double hi = grid[std::min(k + 1, grid.size() - 1)];
    const auto refined = golden_section_maximize(objective, lo, hi, config.refine_tol);
    opt.refine_iterations = refined.iterations;
    if (refined.fx > u_star) {
      beta_star = refined.x;
      u_star = refined.fx;
    }
  }

  opt.beta_star = beta_star;
  opt.allocation = allocate(problem, beta_star);
  opt.total_utility = u_star;
  opt.boundary = beta_star == 0.0 || beta_star == beta_max;

  const double h = std::min(config.refine_tol, 1e-6 * beta_max);
  if (opt.degenerate) {
    opt.extremum_residual = 0.0;
  } else if (beta_star == 0.0) {
    opt.extremum_residual = std::abs(total_utility_at(problem, h) - u_star) / h;
  } else if (beta_star < h) {
    opt.extremum_residual = std::abs(verify_extremum(problem, beta_star, beta_star));
  } else {
    opt.extremum_residual = std::abs(verify_extremum(problem, beta_star, h));
  }
  return opt;
}

/// First-order expansion of U around beta = 0 for a homogeneous problem:
/// U increases away from the egalitarian split iff mean(C E) > mean(C) mean(E).
inline SmallBetaReport small_beta_diagnostic(const DivisionProblem& problem) {
  detail::require_homogeneous(problem, "small_beta_diagnostic");
  require_valid(problem);

  const std::size_t n = problem.size();
  const double uniform_share = problem.cake_size / static_cast<double>(n);

  SmallBetaReport r;
  r.contributions = problem.contributions();
  for (const auto& p : problem.players) r.slopes.push_back(marginal_utility(uniform_share, UtilityParams::of(p)));

  auto mean = [n](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(n);
  };
  r.mean_slope = mean(r.slopes);
  r.mean_contribution = mean(r.contributions);

  // lhs - rhs is a covariance; accumulate it from centered values so that
  // constant slopes or contributions give exactly zero.
  double cov = 0.0;
  auto constant = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
  };
  if (!constant(r.slopes) && !constant(r.contributions)) {
    for (std::size_t j = 0; j < n; ++j) {
      cov += (r.slopes[j] - r.mean_slope) * (r.contributions[j] - r.mean_contribution);
    }
    cov /= static_cast<double>(n);
  }
  r.rhs = r.mean_slope * r.mean_contribution;
  r.lhs = r.rhs + cov;
  r.predicts_interior_maximum = cov > 0.0;
  return r;
}

}  // namespace boltzdiv
