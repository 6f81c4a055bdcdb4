#pragma once

#include <cmath>
#include <span>

#include "boltzdiv/model.hpp"

namespace boltzdiv {

/// Saturating utility u(x) = amplitude * tanh(x / need).
struct UtilityParams {
  double need = 1.0;
  double amplitude = 1.0;

  static UtilityParams of(const Player& p) { return {p.need, p.amplitude}; }
};

namespace detail {
inline void check_share(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::NonFiniteInput, "share is NaN");
  if (x < 0.0) throw Error(ErrorCode::NegativeShare, "share must be >= 0");
}
}  // namespace detail

inline double utility(double x, UtilityParams params) {
  detail::check_share(x);
  return params.amplitude * std::tanh(x / params.need);
}

// (s / D) * sech^2(x / D)
inline double marginal_utility(double x, UtilityParams params) {
  detail::check_share(x);
  const double c = std::cosh(x / params.need);
  return params.amplitude / (params.need * c * c);
}

inline double total_utility(std::span<const double> shares, std::span<const Player> players) {
  if (shares.size() != players.size()) {
    throw Error(ErrorCode::LengthMismatch, "total_utility: allocation and players differ in length");
  }
  double u = 0.0;
  for (std::size_t j = 0; j < shares.size(); ++j) u += utility(shares[j], UtilityParams::of(players[j]));
  return u;
}

inline double total_utility(const Allocation& allocation, std::span<const Player> players) {
  return total_utility(allocation.per_player, players);
}

}  // namespace boltzdiv
