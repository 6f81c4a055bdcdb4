#pragma once

// Domain types for Boltzmann fair-division problems and their validation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace boltzdiv {

enum class ErrorCode {
  InvalidProblem,
  NonFiniteInput,
  NegativeBeta,
  NegativeShare,
  HeterogeneousProblemGiven,
  HomogeneousProblemGiven,
  LengthMismatch,
  ZeroBasisSum,
  InvalidArgument,
  Io,
  Syntax,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Row-major dense matrix of doubles. Small and value-semantic; the problems
/// this library deals with have a handful of players and flavors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) {
        throw Error(ErrorCode::InvalidArgument, "Matrix::from_rows: ragged rows");
      }
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * cols);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  double row_sum(std::size_t r) const {
    auto v = row(r);
    return std::accumulate(v.begin(), v.end(), 0.0);
  }
  double col_sum(std::size_t c) const {
    double s = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }

  std::span<const double> data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Player {
  std::string id;
  double contribution = 0.0;  // division potential, arbitrary nonnegative units
  double need = 1.0;          // in cake-share units
  double amplitude = 1.0;     // utility saturation level

  bool operator==(const Player&) const = default;
};

struct FlavorLayout {
  std::vector<std::string> flavors;
  std::vector<double> sizes;  // cake units per flavor

  std::size_t size() const noexcept { return flavors.size(); }
  bool operator==(const FlavorLayout&) const = default;
};

/// n x m matrix; weights(j, i) is player j's preference for flavor i.
struct PreferenceMatrix {
  Matrix weights;

  bool operator==(const PreferenceMatrix&) const = default;
};

struct Heterogeneity {
  FlavorLayout layout;
  PreferenceMatrix preferences;

  bool operator==(const Heterogeneity&) const = default;
};

inline constexpr double kDefaultCakeSize = 100.0;

struct DivisionProblem {
  std::vector<Player> players;
  double cake_size = kDefaultCakeSize;
  std::optional<Heterogeneity> heterogeneity;

  std::size_t size() const noexcept { return players.size(); }
  bool heterogeneous() const noexcept { return heterogeneity.has_value(); }

  std::vector<double> contributions() const {
    std::vector<double> e;
    e.reserve(players.size());
    for (const auto& p : players) e.push_back(p.contribution);
    return e;
  }
  std::vector<double> needs() const {
    std::vector<double> d;
    d.reserve(players.size());
    for (const auto& p : players) d.push_back(p.need);
    return d;
  }

  bool operator==(const DivisionProblem&) const = default;
};

struct Allocation {
  std::vector<double> per_player;     // N_j
  std::optional<Matrix> per_flavor;   // N_j^i, present iff the problem is heterogeneous

  double total() const { return std::accumulate(per_player.begin(), per_player.end(), 0.0); }
  bool operator==(const Allocation&) const = default;
};

/// Homogeneous problem with players labelled "1".."n" and unit amplitudes.
inline DivisionProblem make_problem(std::span<const double> contributions, std::span<const double> needs,
                                    double cake_size = kDefaultCakeSize) {
  if (contributions.size() != needs.size()) {
    throw Error(ErrorCode::LengthMismatch, "make_problem: contributions and needs differ in length");
  }
  DivisionProblem p;
  p.cake_size = cake_size;
  for (std::size_t j = 0; j < contributions.size(); ++j) {
    p.players.push_back({std::to_string(j + 1), contributions[j], needs[j], 1.0});
  }
  return p;
}

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind {
  EmptyPlayers,
  NonFiniteValue,
  NonPositiveCakeSize,
  NonPositiveNeed,
  NegativeContribution,
  NonPositiveAmplitude,
  EmptyFlavors,
  NonPositiveFlavorSize,
  FlavorSizeMismatch,
  PreferenceShape,
  WeightOutOfRange,
  RowSumViolation,
  UnclaimedFlavor,
  InvalidField,  // malformed or unknown field in serialized input
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::EmptyPlayers: return "EmptyPlayers";
    case ViolationKind::NonFiniteValue: return "NonFiniteValue";
    case ViolationKind::NonPositiveCakeSize: return "NonPositiveCakeSize";
    case ViolationKind::NonPositiveNeed: return "NonPositiveNeed";
    case ViolationKind::NegativeContribution: return "NegativeContribution";
    case ViolationKind::NonPositiveAmplitude: return "NonPositiveAmplitude";
    case ViolationKind::EmptyFlavors: return "EmptyFlavors";
    case ViolationKind::NonPositiveFlavorSize: return "NonPositiveFlavorSize";
    case ViolationKind::FlavorSizeMismatch: return "FlavorSizeMismatch";
    case ViolationKind::PreferenceShape: return "PreferenceShape";
    case ViolationKind::WeightOutOfRange: return "WeightOutOfRange";
    case ViolationKind::RowSumViolation: return "RowSumViolation";
    case ViolationKind::UnclaimedFlavor: return "UnclaimedFlavor";
    case ViolationKind::InvalidField: return "InvalidField";
  }
  return "Unknown";
}

struct Violation {
  ViolationKind kind;
  std::string path;  // JSON-style location, e.g. "players[2].need"
  std::string message;

  bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(ErrorCode::InvalidProblem, summarize(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string s = "invalid problem (" + std::to_string(v.size()) + " violation" +
                    (v.size() == 1 ? "" : "s") + ")";
    for (const auto& x : v) s += "\n  " + x.path + ": " + x.message;
    return s;
  }

  std::vector<Violation> violations_;
};

inline constexpr double kSumTolerance = 1e-9;

namespace detail {

inline bool close_relative(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

inline std::string player_path(std::size_t j, const char* field) {
  return "players[" + std::to_string(j) + "]." + field;
}

inline std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace detail

/// Every invariant violation in `problem`, in a stable order. Empty means valid.
inline std::vector<Violation> find_violations(const DivisionProblem& problem) {
  using detail::num;
  using detail::player_path;
  std::vector<Violation> out;
  auto add = [&out](ViolationKind k, std::string path, std::string msg) {
    out.push_back({k, std::move(path), std::move(msg)});
  };

  if (!std::isfinite(problem.cake_size)) {
    add(ViolationKind::NonFiniteValue, "cake_size", "cake_size must be finite");
  } else if (problem.cake_size <= 0.0) {
    add(ViolationKind::NonPositiveCakeSize, "cake_size",
        "cake_size must be positive, got " + num(problem.cake_size));
  }

  if (problem.players.empty()) {
    add(ViolationKind::EmptyPlayers, "players", "at least one player is required");
  }

  for (std::size_t j = 0; j < problem.players.size(); ++j) {
    const Player& p = problem.players[j];
    if (!std::isfinite(p.contribution)) {
      add(ViolationKind::NonFiniteValue, player_path(j, "contribution"), "contribution must be finite");
    } else if (p.contribution < 0.0) {
      add(ViolationKind::NegativeContribution, player_path(j, "contribution"),
          "contribution must be >= 0, got " + num(p.contribution));
    }
    if (!std::isfinite(p.need)) {
      add(ViolationKind::NonFiniteValue, player_path(j, "need"), "need must be finite");
    } else if (p.need <= 0.0) {
      add(ViolationKind::NonPositiveNeed, player_path(j, "need"), "need must be > 0, got " + num(p.need));
    }
    if (!std::isfinite(p.amplitude)) {
      add(ViolationKind::NonFiniteValue, player_path(j, "amplitude"), "amplitude must be finite");
    } else if (p.amplitude <= 0.0) {
      add(ViolationKind::NonPositiveAmplitude, player_path(j, "amplitude"),
          "amplitude must be > 0, got " + num(p.amplitude));
    }
  }

  if (!problem.heterogeneity) return out;

  const FlavorLayout& layout = problem.heterogeneity->layout;
  const Matrix& w = problem.heterogeneity->preferences.weights;
  const std::size_t m = layout.flavors.size();

  if (m == 0) {
    add(ViolationKind::EmptyFlavors, "flavors", "a heterogeneous problem needs at least one flavor");
  }
  if (layout.sizes.size() != m) {
    add(ViolationKind::PreferenceShape, "flavors", "flavor names and sizes differ in length");
    return out;
  }

  bool sizes_ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    const std::string path = "flavors[" + std::to_string(i) + "].size";
    if (!std::isfinite(layout.sizes[i])) {
      add(ViolationKind::NonFiniteValue, path, "flavor size must be finite");
      sizes_ok = false;
    } else if (layout.sizes[i] <= 0.0) {
      add(ViolationKind::NonPositiveFlavorSize, path, "flavor size must be > 0, got " + num(layout.sizes[i]));
      sizes_ok = false;
    }
  }
  if (sizes_ok && m > 0 && std::isfinite(problem.cake_size)) {
    const double total = std::accumulate(layout.sizes.begin(), layout.sizes.end(), 0.0);
    if (!detail::close_relative(total, problem.cake_size, kSumTolerance)) {
      add(ViolationKind::FlavorSizeMismatch, "flavors",
          "flavor sizes sum to " + num(total) + " but cake_size is " + num(problem.cake_size));
    }
  }

  if (w.rows() != problem.players.size() || w.cols() != m) {
    add(ViolationKind::PreferenceShape, "preferences",
        "preference matrix is " + std::to_string(w.rows()) + "x" + std::to_string(w.cols()) + ", expected " +
            std::to_string(problem.players.size()) + "x" + std::to_string(m));
    return out;
  }

  for (std::size_t j = 0; j < w.rows(); ++j) {
    bool row_ok = true;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = w(j, i);
      if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
        add(ViolationKind::WeightOutOfRange,
            "players[" + std::to_string(j) + "].preferences[" + std::to_string(i) + "]",
            "weight must lie in [0, 1], got " + num(x));
        row_ok = false;
      }
    }
    if (row_ok) {
      const double s = w.row_sum(j);
      if (std::abs(s - 1.0) > kSumTolerance) {
        add(ViolationKind::RowSumViolation, player_path(j, "preferences"),
            "preference weights sum to " + num(s) + ", expected 1");
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    bool claimed = false;
    for (std::size_t j = 0; j < w.rows(); ++j) claimed = claimed || w(j, i) > 0.0;
    if (!claimed) {
      add(ViolationKind::UnclaimedFlavor, "flavors[" + std::to_string(i) + "]",
          "flavor '" + layout.flavors[i] + "' has no player with a positive weight");
    }
  }
  return out;
}

/// Returns `problem` unchanged when it satisfies every invariant; otherwise
/// throws ValidationError carrying the complete violation list.
inline DivisionProblem validate_problem(DivisionProblem problem) {
  auto violations = find_violations(problem);
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return problem;
}

inline void require_valid(const DivisionProblem& problem) {
  auto violations = find_violations(problem);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace boltzdiv
