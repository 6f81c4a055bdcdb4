#pragma once

// Reference instances and random problem generators shared by the unit and
// acceptance suites.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "boltzdiv/model.hpp"

namespace boltzdiv::testing {

// Five-player instance: contributions, needs and flavor preferences.
inline const std::vector<double> kRefContributions{5, 10, 20, 25, 40};
inline const std::vector<double> kRefNeeds{4, 10, 24, 34, 53};
inline const std::vector<std::vector<double>> kRefWeights{
    {0.25, 0.25, 0.25, 0.25},
    {0.5, 0.25, 0.25, 0.0},
    {0.0, 1.0, 0.0, 0.0},
    {0.5, 0.0, 0.0, 0.5},
    {0.25, 0.25, 0.5, 0.0},
};

// Reference homogeneous results (beta* = 0.0288).
inline constexpr double kRefHomogBeta = 0.0288;
inline const std::vector<double> kRefHomogShares{12.17, 14.06, 18.75, 21.66, 33.36};
inline const std::vector<double> kRefHomogProbabilities{0.12, 0.14, 0.19, 0.22, 0.33};

// Reference heterogeneous results (beta* = 0.0286), rows = players,
// columns = vanilla, chocolate, strawberry, broccoli.
inline constexpr double kRefHeteroBeta = 0.0286;
inline const std::vector<std::vector<double>> kRefHeteroShares{
    {2.61, 2.27, 3.29, 5.50},
    {6.03, 2.62, 3.80, 0.00},
    {0.00, 13.94, 0.00, 0.00},
    {9.26, 0.00, 0.00, 19.50},
    {7.11, 6.17, 17.91, 0.00},
};
inline const std::vector<double> kRefHeteroTotals{13.67, 12.44, 13.94, 28.75, 31.19};

// Comparison table: per criterion (Boltzmann, Egalitarian, Prop I, Prop II)
// the shares, deficiencies, utilities and the total utility.
struct CriterionTable {
  std::vector<double> shares;
  std::vector<double> deficiency;
  std::vector<double> utility;
  double total;
};
inline const std::array<CriterionTable, 4> kRefTable1{{
    {{12.17, 14.06, 18.75, 21.66, 33.36},
     {8.17, 4.06, -5.25, -12.34, -19.64},
     {0.9955, 0.8866, 0.6535, 0.5628, 0.5576},
     3.66},
    {{20, 20, 20, 20, 20}, {16, 10, -4, -14, -33}, {0.9999, 0.9640, 0.6823, 0.5286, 0.3604}, 3.54},
    {{5, 10, 20, 25, 40}, {1, 0, -4, -9, -13}, {0.8483, 0.7616, 0.6823, 0.6263, 0.6380}, 3.56},
    {{3.20, 8.00, 19.20, 27.20, 42.40},
     {-0.80, -2.00, -4.80, -6.80, -10.60},
     {0.6640, 0.6640, 0.6640, 0.6640, 0.6640},
     3.32},
}};

inline DivisionProblem reference_homogeneous() { return make_problem(kRefContributions, kRefNeeds); }

inline DivisionProblem reference_heterogeneous() {
  DivisionProblem p = reference_homogeneous();
  Heterogeneity h;
  h.layout.flavors = {"vanilla", "chocolate", "strawberry", "broccoli"};
  h.layout.sizes = {25, 25, 25, 25};
  h.preferences.weights = Matrix::from_rows(kRefWeights);
  p.heterogeneity = h;
  return p;
}

struct RandomOptions {
  int min_players = 1;
  int max_players = 6;
  double max_contribution = 50.0;
  double min_need = 1.0;
  double max_need = 60.0;
  double cake_size = 100.0;
};

inline DivisionProblem random_homogeneous(std::mt19937_64& rng, const RandomOptions& opts = {}) {
  std::uniform_int_distribution<int> count(opts.min_players, opts.max_players);
  std::uniform_real_distribution<double> contribution(0.0, opts.max_contribution);
  std::uniform_real_distribution<double> need(opts.min_need, opts.max_need);
  const int n = count(rng);
  std::vector<double> e(n);
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) {
    e[j] = contribution(rng);
    d[j] = need(rng);
  }
  return make_problem(e, d, opts.cake_size);
}

/// Row-stochastic preferences with roughly a third of the weights zeroed;
/// every flavor keeps at least one positive weight.
inline Matrix random_preferences(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix w(n, m);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w(j, i) = u(rng) < 0.35 ? 0.0 : u(rng);
      s += w(j, i);
    }
    if (s == 0.0) {
      w(j, j % m) = 1.0;
      s = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) w(j, i) /= s;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (w.col_sum(i) > 0.0) continue;
    // Give the flavor to one player by mixing it into their row.
    const std::size_t j = i % n;
    for (std::size_t k = 0; k < m; ++k) w(j, k) *= 0.5;
    w(j, i) = 0.5;
  }
  return w;
}

inline DivisionProblem random_heterogeneous(std::mt19937_64& rng, const RandomOptions& opts = {}) {
  DivisionProblem p = random_homogeneous(rng, opts);
  std::uniform_int_distribution<int> flavors(1, 5);
  std::uniform_real_distribution<double> size(1.0, 10.0);
  const auto m = static_cast<std::size_t>(flavors(rng));
  Heterogeneity h;
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    h.layout.flavors.push_back("f" + std::to_string(i));
    h.layout.sizes.push_back(size(rng));
    total += h.layout.sizes.back();
  }
  for (double& s : h.layout.sizes) s *= p.cake_size / total;
  h.preferences.weights = random_preferences(rng, p.size(), m);
  p.heterogeneity = h;
  return p;
}

}  // namespace boltzdiv::testing
