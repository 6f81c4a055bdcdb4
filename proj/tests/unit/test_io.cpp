#include <gtest/gtest.h>

#include <string>

#include "boltzdiv/io.hpp"
#include "support/fixtures.hpp"

namespace boltzdiv {
namespace {

using namespace boltzdiv::testing;

std::string data_file(const std::string& name) { return std::string(BOLTZDIV_DATA_DIR) + "/" + name; }
std::string bad_file(const std::string& name) { return std::string(BOLTZDIV_TEST_DATA_DIR) + "/bad/" + name; }

std::vector<Violation> violations_of(const std::string& path) {
  try {
    load_problem(path);
  } catch (const ValidationError& e) {
    return e.violations();
  }
  ADD_FAILURE() << path << " was accepted";
  return {};
}

TEST(LoadProblem, ReferenceFixtures) {
  const auto homog = load_problem(data_file("reference_homog.json"));
  EXPECT_EQ(homog.players, reference_homogeneous().players);
  EXPECT_FALSE(homog.heterogeneous());
  const auto hetero = load_problem(data_file("reference_hetero.json"));
  ASSERT_TRUE(hetero.heterogeneous());
  EXPECT_EQ(hetero.heterogeneity->preferences.weights, Matrix::from_rows(kRefWeights));
  EXPECT_EQ(hetero.heterogeneity->layout.flavors[3], "broccoli");
}

TEST(LoadProblem, SinglePlayerDefaults) {
  const auto p = load_problem(data_file("single_player.json"));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.cake_size, 100.0);
  EXPECT_EQ(p.players[0].id, "a");
  EXPECT_EQ(p.players[0].amplitude, 1.0);
}

TEST(LoadProblem, EveryShippedExampleIsValid) {
  for (const char* f : {"identical_players.json", "amplitude_groups.json"}) {
    EXPECT_NO_THROW(load_problem(data_file(f))) << f;
  }
}

TEST(LoadProblem, RowSumViolationNamesTheRow) {
  const auto v = violations_of(bad_file("row_sum.json"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ViolationKind::RowSumViolation);
  EXPECT_EQ(v[0].path, "players[0].preferences");
  EXPECT_NE(v[0].message.find("1.25"), std::string::npos) << v[0].message;
}

TEST(LoadProblem, UnknownKeyIsNamed) {
  const auto v = violations_of(bad_file("unknown_key.json"));
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "players[0].weight");
  EXPECT_NE(v[0].message.find("weight"), std::string::npos);
}

TEST(LoadProblem, SchemaAndInvariantErrors) {
  EXPECT_EQ(violations_of(bad_file("negative_need.json")).at(0).path, "players[1].need");
  EXPECT_EQ(violations_of(bad_file("missing_need.json")).at(0).path, "players[0].need");
  EXPECT_EQ(violations_of(bad_file("unclaimed_flavor.json")).at(0).path, "flavors[1]");
  EXPECT_EQ(violations_of(bad_file("wrong_type.json")).at(0).path, "cake_size");
}

TEST(ParseProblem, SyntaxErrorCarriesPosition) {
  try {
    load_problem(bad_file("syntax_error.json"));
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GE(e.column(), 17u);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ParseProblem, StructuralErrors) {
  EXPECT_THROW(parse_problem("[1, 2]"), ValidationError);
  EXPECT_THROW(parse_problem(R"({"players": {}})"), ValidationError);
  EXPECT_THROW(parse_problem(R"({"players": []})"), ValidationError);
  EXPECT_THROW(parse_problem(R"({"players": [{"id": "a", "contribution": 1, "need": 1}], "flavors": []})"),
               ValidationError);
  EXPECT_THROW(parse_problem(R"({"players": [{"id": 7, "contribution": 1, "need": 1}]})"), ValidationError);
  EXPECT_THROW(parse_problem(""), SyntaxError);
}

TEST(ParseProblem, ReportsAllSchemaErrorsAtOnce) {
  const char* text = R"({"players": [{"id": "a", "contribution": 1, "need": 2, "mood": 1}, {"id": "b", "need": 2}]})";
  try {
    parse_problem(text);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.violations().size(), 2u);
    EXPECT_EQ(e.violations()[0].path, "players[0].mood");
    EXPECT_EQ(e.violations()[1].path, "players[1].contribution");
  }
}

TEST(ProblemJson, RoundTrip) {
  for (const auto& prob : {reference_homogeneous(), reference_heterogeneous()}) {
    const auto again = parse_problem(problem_to_json(prob).dump());
    EXPECT_EQ(again.players, prob.players);
    EXPECT_EQ(again.cake_size, prob.cake_size);
    EXPECT_EQ(again.heterogeneous(), prob.heterogeneous());
    if (prob.heterogeneous()) {
      EXPECT_EQ(again.heterogeneity->preferences.weights, prob.heterogeneity->preferences.weights);
      EXPECT_EQ(again.heterogeneity->layout.sizes, prob.heterogeneity->layout.sizes);
    }
  }
}

TEST(ReadTextFile, MissingFileIsIoError) {
  try {
    load_problem(data_file("does_not_exist.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
}  // namespace boltzdiv
