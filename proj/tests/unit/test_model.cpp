#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "boltzdiv/model.hpp"
#include "support/fixtures.hpp"

namespace boltzdiv {
namespace {

using testing::reference_heterogeneous;
using testing::reference_homogeneous;

bool has(const std::vector<Violation>& v, ViolationKind k, const std::string& path = "") {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.kind == k && (path.empty() || x.path == path); });
}

TEST(Validate, ReferenceHeterogeneousInstanceIsValid) {
  const auto p = reference_heterogeneous();
  EXPECT_TRUE(find_violations(p).empty());
  EXPECT_EQ(validate_problem(p), p);
}

TEST(Validate, MinimalSinglePlayerWithZeroContribution) {
  DivisionProblem p;
  p.players.push_back({"solo", 0.0, 1.0, 1.0});
  EXPECT_NO_THROW(validate_problem(p));
}

TEST(Validate, RowSumViolationNamesThePlayer) {
  auto p = reference_heterogeneous();
  auto& w = p.heterogeneity->preferences.weights;
  w(0, 0) = 0.5;  // row becomes 0.5, 0.25, 0.25, 0.25
  const auto v = find_violations(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::RowSumViolation);
  EXPECT_EQ(v[0].path, "players[0].preferences");
}

TEST(Validate, ReportsEveryViolationNotJustTheFirst) {
  DivisionProblem p = reference_heterogeneous();
  p.players[1].need = 0.0;
  p.players[2].contribution = -1.0;
  p.players[3].amplitude = -2.0;
  p.heterogeneity->layout.sizes[0] = 30.0;  // sizes now sum to 105
  auto& w = p.heterogeneity->preferences.weights;
  // Remove broccoli from players 1 and 4, keeping rows stochastic.
  w(0, 3) = 0.0;
  w(0, 0) = 0.5;
  w(3, 3) = 0.0;
  w(3, 0) = 1.0;

  const auto v = find_violations(p);
  EXPECT_TRUE(has(v, ViolationKind::NonPositiveNeed, "players[1].need"));
  EXPECT_TRUE(has(v, ViolationKind::NegativeContribution, "players[2].contribution"));
  EXPECT_TRUE(has(v, ViolationKind::NonPositiveAmplitude, "players[3].amplitude"));
  EXPECT_TRUE(has(v, ViolationKind::FlavorSizeMismatch, "flavors"));
  EXPECT_TRUE(has(v, ViolationKind::UnclaimedFlavor, "flavors[3]"));
  EXPECT_EQ(v.size(), 5u);

  try {
    validate_problem(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.violations(), v);
    EXPECT_EQ(e.code(), ErrorCode::InvalidProblem);
  }
}

TEST(Validate, EmptyPlayers) {
  DivisionProblem p;
  EXPECT_TRUE(has(find_violations(p), ViolationKind::EmptyPlayers));
}

TEST(Validate, PreferenceShapeMustMatchPlayersAndFlavors) {
  auto p = reference_heterogeneous();
  p.players.pop_back();
  EXPECT_TRUE(has(find_violations(p), ViolationKind::PreferenceShape, "preferences"));
}

TEST(Validate, WeightsOutsideUnitIntervalRejected) {
  auto p = reference_heterogeneous();
  auto& w = p.heterogeneity->preferences.weights;
  w(2, 1) = 1.5;
  w(2, 0) = -0.5;
  const auto v = find_violations(p);
  EXPECT_TRUE(has(v, ViolationKind::WeightOutOfRange, "players[2].preferences[0]"));
  EXPECT_TRUE(has(v, ViolationKind::WeightOutOfRange, "players[2].preferences[1]"));
}

TEST(Validate, NonFiniteValuesRejected) {
  auto p = reference_homogeneous();
  p.players[0].contribution = std::nan("");
  p.cake_size = std::numeric_limits<double>::infinity();
  const auto v = find_violations(p);
  EXPECT_TRUE(has(v, ViolationKind::NonFiniteValue, "players[0].contribution"));
  EXPECT_TRUE(has(v, ViolationKind::NonFiniteValue, "cake_size"));
}

TEST(Validate, ExactZeroWeightsAndNeedsAboveCakeAreLegal) {
  auto p = reference_heterogeneous();
  p.players[4].need = 500.0;
  EXPECT_TRUE(find_violations(p).empty());
}

TEST(Validate, IsIdempotent) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::random_heterogeneous(rng);
    const auto once = validate_problem(p);
    EXPECT_EQ(validate_problem(once), once);
    EXPECT_EQ(once, p);
  }
}

TEST(Matrix, FromRowsRejectsRaggedInput) {
  EXPECT_THROW(Matrix::from_rows({{1, 2}, {3}}), Error);
  const auto m = Matrix::from_rows({{1, 2}, {3, 4}});
  EXPECT_EQ(m.row_sum(1), 7.0);
  EXPECT_EQ(m.col_sum(0), 4.0);
}

}  // namespace
}  // namespace boltzdiv
