#pragma once

// The `boltzdiv` command line: solve | compare | curve | diagnose.
// Exit codes: 0 success, 1 invalid input or domain error, 2 I/O error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boltzdiv/baselines.hpp"
#include "boltzdiv/io.hpp"
#include "boltzdiv/optimize.hpp"
#include "boltzdiv/report.hpp"

namespace boltzdiv {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

namespace detail {

struct CliOptions {
  std::string file;
  std::optional<double> beta;
  std::optional<double> beta_max;
  std::optional<int> points;
  std::string format = "text";
  std::string out;
  std::optional<std::uint64_t> units;
  std::uint64_t seed = 0;
};

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  return Format::Text;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open '" + out_path + "' for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::Io, "error writing '" + out_path + "'");
}

inline SearchConfig search_config(const CliOptions& o) {
  SearchConfig c;
  c.beta_max = o.beta_max;
  if (o.points) c.grid_points = *o.points;
  return c;
}

inline int cmd_solve(const CliOptions& o, std::ostream& out) {
  const auto problem = load_problem(o.file);
  const auto result = solve(problem, o.beta, search_config(o), o.units, o.seed);
  switch (parse_format(o.format)) {
    case Format::Csv: emit(render_solve_csv(result), o.out, out); break;
    case Format::Json: emit(render_solve_json(result), o.out, out); break;
    case Format::Text: emit(render_solve_text(result), o.out, out); break;
  }
  return kExitOk;
}

inline int cmd_compare(const CliOptions& o, std::ostream& out) {
  const auto problem = load_problem(o.file);
  const auto report = comparison_report(problem, optimize_beta(problem, search_config(o)));
  switch (parse_format(o.format)) {
    case Format::Csv: emit(render_compare_csv(problem, report), o.out, out); break;
    case Format::Json: emit(render_compare_json(problem, report), o.out, out); break;
    case Format::Text: emit(render_compare_text(problem, report), o.out, out); break;
  }
  return kExitOk;
}

inline int cmd_curve(const CliOptions& o, std::ostream& out, std::ostream& err) {
  const auto problem = load_problem(o.file);
  const double beta_max = o.beta_max.value_or(default_beta_max(problem));
  const int points = o.points.value_or(256);
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "--points must be at least 2");
  const auto grid = linear_grid(beta_max, static_cast<std::size_t>(points));
  const auto curve = utility_curve(problem, grid);
  emit(render_curve_csv(curve), o.out, out);
  // Keep stdout pure CSV when the curve itself goes there.
  (o.out.empty() ? err : out) << render_curve_summary(curve);
  return kExitOk;
}

inline int cmd_diagnose(const CliOptions& o, std::ostream& out) {
  const auto problem = load_problem(o.file);
  if (problem.heterogeneous()) {
    throw Error(ErrorCode::HeterogeneousProblemGiven,
                "diagnose: the small-beta linearization needs a homogeneous cake; with flavor preferences the "
                "shares at beta = 0 are not uniform, so no such condition is available");
  }
  const auto report = small_beta_diagnostic(problem);
  switch (parse_format(o.format)) {
    case Format::Csv: emit(render_diagnose_csv(problem, report), o.out, out); break;
    case Format::Json: emit(render_diagnose_json(problem, report), o.out, out); break;
    case Format::Text: emit(render_diagnose_text(problem, report), o.out, out); break;
  }
  return kExitOk;
}

}  // namespace detail

/// Runs the command line with `args` (excluding the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boltzmann fair division: optimal exponential-weight allocations and baseline comparisons",
               "boltzdiv"};
  app.require_subcommand(1);
  detail::CliOptions o;

  auto add_file = [&o](CLI::App* sub) { sub->add_option("file", o.file, "problem file (JSON)")->required(); };
  auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
  };
  auto add_search = [&o](CLI::App* sub) {
    sub->add_option("--beta-max", o.beta_max, "upper end of the beta search range")
        ->check(CLI::PositiveNumber);
    sub->add_option("--points", o.points, "grid points for the beta search");
  };
  auto add_out = [&o](CLI::App* sub) { sub->add_option("--out", o.out, "write output to this path"); };

  auto* solve_cmd = app.add_subcommand("solve", "allocation at the utility-maximizing beta (or a fixed --beta)");
  add_file(solve_cmd);
  solve_cmd->add_option("--beta", o.beta, "evaluate at this beta instead of searching")
      ->check(CLI::NonNegativeNumber);
  add_search(solve_cmd);
  add_format(solve_cmd);
  add_out(solve_cmd);
  solve_cmd->add_option("--units", o.units, "also draw this many discrete units at random")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", o.seed, "seed for --units")->capture_default_str();

  auto* compare_cmd = app.add_subcommand("compare", "Boltzmann vs egalitarian and proportional divisions");
  add_file(compare_cmd);
  add_search(compare_cmd);
  add_format(compare_cmd);
  add_out(compare_cmd);

  auto* curve_cmd = app.add_subcommand("curve", "total utility sampled over beta, as CSV");
  add_file(curve_cmd);
  add_search(curve_cmd);
  add_out(curve_cmd);

  auto* diagnose_cmd = app.add_subcommand("diagnose", "small-beta test for an interior maximum");
  add_file(diagnose_cmd);
  add_format(diagnose_cmd);
  add_out(diagnose_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (solve_cmd->parsed()) return detail::cmd_solve(o, out);
    if (compare_cmd->parsed()) return detail::cmd_compare(o, out);
    if (curve_cmd->parsed()) return detail::cmd_curve(o, out, err);
    if (diagnose_cmd->parsed()) return detail::cmd_diagnose(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << o.file << ": invalid problem\n";
    for (const auto& v : e.violations()) err << "  " << v.path << ": " << v.message << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? kExitIo : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace boltzdiv
