#pragma once

// Command lines whose standard output is pinned by files in tests/golden/.
// "{data}" expands to the example data directory.

#include <ostream>
#include <string>
#include <vector>

namespace boltzdiv::testing {

struct GoldenCase {
  std::string name;  // file name under tests/golden/
  std::vector<std::string> args;
};

inline void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

inline const std::vector<GoldenCase> kGoldenCases{
    {"solve_homog.txt", {"solve", "{data}/reference_homog.json"}},
    {"solve_homog.csv", {"solve", "{data}/reference_homog.json", "--format", "csv"}},
    {"solve_homog.json", {"solve", "{data}/reference_homog.json", "--format", "json"}},
    {"solve_hetero.txt", {"solve", "{data}/reference_hetero.json"}},
    {"solve_hetero.csv", {"solve", "{data}/reference_hetero.json", "--format", "csv"}},
    {"solve_hetero.json", {"solve", "{data}/reference_hetero.json", "--format", "json"}},
    {"solve_fixed_beta.txt", {"solve", "{data}/reference_homog.json", "--beta", "0.0288"}},
    {"solve_sampled.csv", {"solve", "{data}/reference_homog.json", "--format", "csv", "--units", "1000", "--seed", "7"}},
    {"solve_identical.txt", {"solve", "{data}/identical_players.json"}},
    {"solve_single.txt", {"solve", "{data}/single_player.json"}},
    {"compare_homog.txt", {"compare", "{data}/reference_homog.json"}},
    {"compare_homog.csv", {"compare", "{data}/reference_homog.json", "--format", "csv"}},
    {"compare_homog.json", {"compare", "{data}/reference_homog.json", "--format", "json"}},
    {"compare_hetero.txt", {"compare", "{data}/reference_hetero.json"}},
    {"curve_homog.csv", {"curve", "{data}/reference_homog.json", "--beta-max", "0.2", "--points", "201"}},
    {"diagnose_homog.txt", {"diagnose", "{data}/reference_homog.json"}},
    {"diagnose_homog.csv", {"diagnose", "{data}/reference_homog.json", "--format", "csv"}},
    {"diagnose_homog.json", {"diagnose", "{data}/reference_homog.json", "--format", "json"}},
    {"diagnose_amplitude.txt", {"diagnose", "{data}/amplitude_groups.json"}},
};

}  // namespace boltzdiv::testing
