#pragma once

// Boltzmann allocation kernels. A cake unit goes to player j with probability
// proportional to exp(beta * E_j); with flavors, a unit of flavor i goes to j
// with probability proportional to w_j^i * exp(beta * E_j).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "boltzdiv/model.hpp"

namespace boltzdiv {

using ProbabilityVector = std::vector<double>;
using ProbabilityMatrix = Matrix;  // p(j, i) = P_j^i; columns sum to 1

namespace detail {

inline void check_beta(double beta) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::NonFiniteInput, "beta must be finite");
  if (beta < 0.0) throw Error(ErrorCode::NegativeBeta, "beta must be >= 0");
}

inline void require_homogeneous(const DivisionProblem& problem, const char* op) {
  if (problem.heterogeneous()) {
    throw Error(ErrorCode::HeterogeneousProblemGiven, std::string(op) + ": problem has flavors");
  }
}

inline void require_heterogeneous(const DivisionProblem& problem, const char* op) {
  if (!problem.heterogeneous()) {
    throw Error(ErrorCode::HomogeneousProblemGiven, std::string(op) + ": problem has no flavors");
  }
}

}  // namespace detail

/// Softmax of beta * E, stabilized by subtracting the largest exponent.
inline ProbabilityVector homogeneous_probabilities(std::span<const double> contributions, double beta) {
  if (contributions.empty()) throw Error(ErrorCode::InvalidArgument, "no contributions given");
  detail::check_beta(beta);
  for (double e : contributions) {
    if (!std::isfinite(e)) throw Error(ErrorCode::NonFiniteInput, "contributions must be finite");
  }

  double shift = -std::numeric_limits<double>::infinity();
  for (double e : contributions) shift = std::max(shift, beta * e);

  ProbabilityVector p(contributions.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    p[j] = std::exp(beta * contributions[j] - shift);
    sum += p[j];
  }
  for (double& x : p) x /= sum;
  return p;
}

inline Allocation homogeneous_allocation(const DivisionProblem& problem, double beta) {
  detail::require_homogeneous(problem, "homogeneous_allocation");
  const auto e = problem.contributions();
  Allocation a;
  a.per_player = homogeneous_probabilities(e, beta);
  for (double& x : a.per_player) x *= problem.cake_size;
  return a;
}

/// Column-normalized weighted softmax. Zero weights give exactly zero
/// probability; the stabilizing shift for each column only looks at players
/// with a positive weight for that flavor.
inline ProbabilityMatrix flavor_probabilities(const DivisionProblem& problem, double beta) {
  detail::require_heterogeneous(problem, "flavor_probabilities");
  detail::check_beta(beta);
  require_valid(problem);

  const Matrix& w = problem.heterogeneity->preferences.weights;
  const std::size_t n = w.rows();
  const std::size_t m = w.cols();

  ProbabilityMatrix p(n, m);
  for (std::size_t i = 0; i < m; ++i) {
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (w(j, i) > 0.0) shift = std::max(shift, beta * problem.players[j].contribution);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (w(j, i) > 0.0) {
        p(j, i) = w(j, i) * std::exp(beta * problem.players[j].contribution - shift);
        sum += p(j, i);
      }
    }
    for (std::size_t j = 0; j < n; ++j) p(j, i) /= sum;
  }
  return p;
}

inline Allocation heterogeneous_allocation(const DivisionProblem& problem, double beta) {
  const ProbabilityMatrix p = flavor_probabilities(problem, beta);
  const auto& sizes = problem.heterogeneity->layout.sizes;

  Allocation a;
  a.per_player.assign(p.rows(), 0.0);
  Matrix shares(p.rows(), p.cols());
  for (std::size_t j = 0; j < p.rows(); ++j) {
    for (std::size_t i = 0; i < p.cols(); ++i) {
      shares(j, i) = sizes[i] * p(j, i);
      a.per_player[j] += shares(j, i);
    }
  }
  a.per_flavor = std::move(shares);
  return a;
}

/// Expected allocation for either kind of problem.
inline Allocation allocate(const DivisionProblem& problem, double beta) {
  return problem.heterogeneous() ? heterogeneous_allocation(problem, beta) : homogeneous_allocation(problem, beta);
}

/// Splits `units` integer units across flavors in proportion to their sizes
/// (largest remainder; ties go to the lower flavor index).
inline std::vector<std::uint64_t> apportion_units(std::span<const double> sizes, std::uint64_t units) {
  const double total = [&] {
    double s = 0.0;
    for (double x : sizes) s += x;
    return s;
  }();
  std::vector<std::uint64_t> out(sizes.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const double exact = static_cast<double>(units) * sizes[i] / total;
    out[i] = static_cast<std::uint64_t>(std::floor(exact));
    assigned += out[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < units; ++k, ++assigned) out[remainders[k % remainders.size()].second] += 1;
  return out;
}

/// Monte Carlo realization of the allocation: every one of `units` discrete
/// cake units is handed out by an independent categorical draw. Counts are
/// rescaled so the result is in cake units. Deterministic for a given seed.
inline Allocation sample_allocation(const DivisionProblem& problem, double beta, std::uint64_t units,
                                    std::uint64_t seed) {
  if (units == 0) throw Error(ErrorCode::InvalidArgument, "units must be >= 1");
  std::mt19937_64 rng(seed);
  const double scale = problem.cake_size / static_cast<double>(units);

  auto draw = [&rng](std::span<const double> probs, std::uint64_t count, std::vector<std::uint64_t>& hits) {
    std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
    for (std::uint64_t u = 0; u < count; ++u) ++hits[pick(rng)];
  };

  const std::size_t n = problem.size();
  Allocation a;
  a.per_player.assign(n, 0.0);

  if (!problem.heterogeneous()) {
    const auto p = homogeneous_probabilities(problem.contributions(), beta);
    std::vector<std::uint64_t> hits(n, 0);
    draw(p, units, hits);
    for (std::size_t j = 0; j < n; ++j) a.per_player[j] = static_cast<double>(hits[j]) * scale;
    return a;
  }

  const ProbabilityMatrix p = flavor_probabilities(problem, beta);
  const auto per_flavor_units = apportion_units(problem.heterogeneity->layout.sizes, units);
  Matrix shares(n, p.cols());
  std::vector<double> column(n);
  for (std::size_t i = 0; i < p.cols(); ++i) {
    for (std::size_t j = 0; j < n; ++j) column[j] = p(j, i);
    std::vector<std::uint64_t> hits(n, 0);
    draw(column, per_flavor_units[i], hits);
    for (std::size_t j = 0; j < n; ++j) {
      shares(j, i) = static_cast<double>(hits[j]) * scale;
      a.per_player[j] += shares(j, i);
    }
  }
  a.per_flavor = std::move(shares);
  return a;
}

}  // namespace boltzdiv
