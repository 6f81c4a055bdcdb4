#pragma once

// Conventional division criteria (egalitarian, contribution- and
// need-proportional) and a side-by-side comparison with the optimal
// Boltzmann division.

#include <algorithm>
#include <array>
#include <numeric>
#include <span>
#include <vector>

#include "boltzdiv/model.hpp"
#include "boltzdiv/optimize.hpp"
#include "boltzdiv/utility.hpp"

namespace boltzdiv {

enum class Criterion { Boltzmann, Egalitarian, PropContribution, PropNeed };

inline constexpr std::array<Criterion, 4> kCriteria = {Criterion::Boltzmann, Criterion::Egalitarian,
                                                       Criterion::PropContribution, Criterion::PropNeed};

inline const char* to_string(Criterion c) {
  switch (c) {
    case Criterion::Boltzmann: return "boltzmann";
    case Criterion::Egalitarian: return "egalitarian";
    case Criterion::PropContribution: return "prop_contribution";
    case Criterion::PropNeed: return "prop_need";
  }
  return "unknown";
}

enum class Basis { Contribution, Need };

inline Allocation egalitarian_allocation(const DivisionProblem& problem) {
  require_valid(problem);
  Allocation a;
  a.per_player.assign(problem.size(), problem.cake_size / static_cast<double>(problem.size()));
  return a;
}

inline Allocation proportional_allocation(const DivisionProblem& problem, Basis basis) {
  require_valid(problem);
  const auto v = basis == Basis::Contribution ? problem.contributions() : problem.needs();
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::ZeroBasisSum, basis == Basis::Contribution ? "contributions sum to zero"
                                                                      : "needs sum to zero");
  }
  Allocation a;
  a.per_player.reserve(v.size());
  for (double x : v) a.per_player.push_back(problem.cake_size * x / total);
  return a;
}

/// N_j - D_j; negative entries are under-served players.
inline std::vector<double> deficiency(const Allocation& allocation, std::span<const Player> players) {
  if (allocation.per_player.size() != players.size()) {
    throw Error(ErrorCode::LengthMismatch, "deficiency: allocation and players differ in length");
  }
  std::vector<double> d(players.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = allocation.per_player[j] - players[j].need;
  return d;
}

struct CriterionResult {
  Criterion criterion;
  Allocation allocation;
  std::vector<double> deficiency;
  std::vector<double> utilities;
  double total_utility = 0.0;
};

struct ComparisonReport {
  double beta_star = 0.0;
  std::array<CriterionResult, 4> results;  // in kCriteria order
  // rankings[j] orders the criteria from the largest share for player j to
  // the smallest; equal shares keep kCriteria order.
  std::vector<std::array<Criterion, 4>> rankings;
  bool totals_only = false;  // baselines ignore flavors

  const CriterionResult& operator[](Criterion c) const { return results[static_cast<std::size_t>(c)]; }
};

inline CriterionResult evaluate_criterion(Criterion c, Allocation allocation, std::span<const Player> players) {
  CriterionResult r{c, std::move(allocation), {}, {}, 0.0};
  r.deficiency = deficiency(r.allocation, players);
  r.utilities.reserve(players.size());
  for (std::size_t j = 0; j < players.size(); ++j) {
    r.utilities.push_back(utility(r.allocation.per_player[j], UtilityParams::of(players[j])));
    r.total_utility += r.utilities.back();
  }
  return r;
}

/// Proportional-to-contribution falls back to an error when every player
/// contributed zero; comparison_report propagates it.
inline ComparisonReport comparison_report(const DivisionProblem& problem, const Optimum& optimum) {
  require_valid(problem);
  if (optimum.allocation.per_player.size() != problem.size()) {
    throw Error(ErrorCode::LengthMismatch, "comparison_report: optimum does not match the problem");
  }
  const auto& players = problem.players;
  ComparisonReport rep;
  rep.beta_star = optimum.beta_star;
  rep.totals_only = problem.heterogeneous();
  rep.results = {
      evaluate_criterion(Criterion::Boltzmann, optimum.allocation, players),
      evaluate_criterion(Criterion::Egalitarian, egalitarian_allocation(problem), players),
      evaluate_criterion(Criterion::PropContribution, proportional_allocation(problem, Basis::Contribution), players),
      evaluate_criterion(Criterion::PropNeed, proportional_allocation(problem, Basis::Need), players),
  };

  rep.rankings.resize(problem.size());
  for (std::size_t j = 0; j < problem.size(); ++j) {
    auto order = kCriteria;
    std::stable_sort(order.begin(), order.end(), [&](Criterion a, Criterion b) {
      return rep[a].allocation.per_player[j] > rep[b].allocation.per_player[j];
    });
    rep.rankings[j] = order;
  }
  return rep;
}

}  // namespace boltzdiv
