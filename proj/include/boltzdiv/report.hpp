#pragma once

// Text, CSV and JSON rendering of solve / compare / diagnose results and the
// utility-curve CSV. Shares print with 2 decimals, utilities and
// probabilities with 4, beta with 4 significant figures.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boltzdiv/baselines.hpp"
#include "boltzdiv/division.hpp"
#include "boltzdiv/model.hpp"
#include "boltzdiv/optimize.hpp"
#include "boltzdiv/utility.hpp"

namespace boltzdiv {

enum class Format { Text, Csv, Json };

namespace fmt {

inline std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s = buf;
  // "-0.00" -> "0.00"
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline std::string sig(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline std::string share(double x) { return fixed(x, 2); }
inline std::string util(double x) { return fixed(x, 4); }
inline std::string beta(double x) { return sig(x, 4); }

// Rounded copies for JSON output, so JSON shows the same digits as text.
inline double round_fixed(double x, int decimals) { return std::stod(fixed(x, decimals)); }
inline double round_sig(double x, int digits = 4) { return std::stod(sig(x, digits)); }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace fmt

/// Minimal aligned text table: first column left-aligned, the rest right-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : rows_{std::move(header)} {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream os;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t c = 0; c < r.size(); ++c) {
        const std::string pad(width[c] - r[c].size(), ' ');
        if (c == 0) {
          line += r[c] + pad;
        } else {
          line += "  " + pad + r[c];
        }
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// ---------------------------------------------------------------------------
// solve

struct SolveResult {
  DivisionProblem problem;
  double beta = 0.0;
  std::optional<Optimum> optimum;  // absent when beta was fixed by the caller
  Allocation allocation;
  std::vector<double> utilities;
  double total_utility = 0.0;
  std::optional<ProbabilityVector> probabilities;      // homogeneous
  std::optional<ProbabilityMatrix> flavor_probabilities;  // heterogeneous
  std::optional<Allocation> sampled;
  std::uint64_t sampled_units = 0;
};

inline SolveResult solve(const DivisionProblem& problem, std::optional<double> fixed_beta, const SearchConfig& config,
                         std::optional<std::uint64_t> sample_units = std::nullopt, std::uint64_t seed = 0) {
  require_valid(problem);
  SolveResult r;
  r.problem = problem;
  if (fixed_beta) {
    r.beta = *fixed_beta;
    r.allocation = allocate(problem, r.beta);
  } else {
    r.optimum = optimize_beta(problem, config);
    r.beta = r.optimum->beta_star;
    r.allocation = r.optimum->allocation;
  }
  for (std::size_t j = 0; j < problem.size(); ++j) {
    r.utilities.push_back(utility(r.allocation.per_player[j], UtilityParams::of(problem.players[j])));
    r.total_utility += r.utilities.back();
  }
  if (problem.heterogeneous()) {
    r.flavor_probabilities = flavor_probabilities(problem, r.beta);
  } else {
    r.probabilities = homogeneous_probabilities(problem.contributions(), r.beta);
  }
  if (sample_units) {
    r.sampled = sample_allocation(problem, r.beta, *sample_units, seed);
    r.sampled_units = *sample_units;
  }
  return r;
}

namespace detail {

inline double max_total_utility(const DivisionProblem& p) {
  double s = 0.0;
  for (const auto& pl : p.players) s += pl.amplitude;
  return s;
}

inline std::string optimum_status(const Optimum& o) {
  if (o.degenerate) return "degenerate: utility constant in beta";
  if (o.boundary) return o.beta_star == 0.0 ? "boundary: beta = 0" : "boundary: beta = beta_max";
  return "interior";
}

}  // namespace detail

inline std::string render_solve_text(const SolveResult& r) {
  const auto& p = r.problem;
  std::ostringstream os;
  os << "Boltzmann division: " << p.size() << " player" << (p.size() == 1 ? "" : "s") << ", cake "
     << fmt::share(p.cake_size);
  if (p.heterogeneous()) os << ", " << p.heterogeneity->layout.size() << " flavors";
  os << "\n";
  if (r.optimum) {
    os << "beta*          " << fmt::beta(r.beta) << "  (" << detail::optimum_status(*r.optimum)
       << ", |dU/dbeta| = " << fmt::sig(r.optimum->extremum_residual, 3) << ")\n";
  } else {
    os << "beta           " << fmt::beta(r.beta) << "  (fixed)\n";
  }
  os << "total utility  " << fmt::util(r.total_utility) << " / " << fmt::util(detail::max_total_utility(p)) << "\n\n";

  std::vector<std::string> header{"player", "contribution", "need"};
  if (r.probabilities) header.push_back("probability");
  header.insert(header.end(), {"share", "utility"});
  if (r.sampled) header.push_back("sampled");
  TextTable t(header);
  double e_sum = 0.0;
  double d_sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Player& pl = p.players[j];
    e_sum += pl.contribution;
    d_sum += pl.need;
    std::vector<std::string> row{pl.id, fmt::share(pl.contribution), fmt::share(pl.need)};
    if (r.probabilities) row.push_back(fmt::util((*r.probabilities)[j]));
    row.insert(row.end(), {fmt::share(r.allocation.per_player[j]), fmt::util(r.utilities[j])});
    if (r.sampled) row.push_back(fmt::share(r.sampled->per_player[j]));
    t.add(std::move(row));
  }
  std::vector<std::string> total{"total", fmt::share(e_sum), fmt::share(d_sum)};
  if (r.probabilities) total.push_back(fmt::util(1.0));
  total.insert(total.end(), {fmt::share(r.allocation.total()), fmt::util(r.total_utility)});
  if (r.sampled) total.push_back(fmt::share(r.sampled->total()));
  t.add(std::move(total));
  os << t.str();

  if (p.heterogeneous()) {
    const auto& layout = p.heterogeneity->layout;
    const Matrix& shares = *r.allocation.per_flavor;
    const Matrix& probs = *r.flavor_probabilities;

    std::vector<std::string> fh{"player"};
    fh.insert(fh.end(), layout.flavors.begin(), layout.flavors.end());
    TextTable pt(fh);
    fh.push_back("total");
    TextTable st(fh);
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::vector<std::string> srow{p.players[j].id};
      std::vector<std::string> prow{p.players[j].id};
      for (std::size_t i = 0; i < layout.size(); ++i) {
        srow.push_back(fmt::share(shares(j, i)));
        prow.push_back(fmt::util(probs(j, i)));
      }
      srow.push_back(fmt::share(r.allocation.per_player[j]));
      st.add(std::move(srow));
      pt.add(std::move(prow));
    }
    std::vector<std::string> stot{"total"};
    std::vector<std::string> ptot{"total"};
    for (std::size_t i = 0; i < layout.size(); ++i) {
      stot.push_back(fmt::share(shares.col_sum(i)));
      ptot.push_back(fmt::util(probs.col_sum(i)));
    }
    stot.push_back(fmt::share(r.allocation.total()));
    st.add(std::move(stot));
    pt.add(std::move(ptot));
    os << "\nshares by flavor\n" << st.str() << "\nprobabilities by flavor\n" << pt.str();
  }
  if (r.sampled) os << "\nsampled: " << r.sampled_units << " discrete units\n";
  return os.str();
}

inline std::string render_solve_csv(const SolveResult& r) {
  const auto& p = r.problem;
  std::ostringstream os;
  os << "beta,player,contribution,need";
  if (r.probabilities) os << ",probability";
  if (p.heterogeneous()) {
    for (const auto& f : p.heterogeneity->layout.flavors) os << "," << fmt::csv_field("share:" + f);
    for (const auto& f : p.heterogeneity->layout.flavors) os << "," << fmt::csv_field("probability:" + f);
  }
  os << ",share,utility";
  if (r.sampled) os << ",sampled_share";
  os << "\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Player& pl = p.players[j];
    os << fmt::beta(r.beta) << "," << fmt::csv_field(pl.id) << "," << fmt::share(pl.contribution) << ","
       << fmt::share(pl.need);
    if (r.probabilities) os << "," << fmt::util((*r.probabilities)[j]);
    if (p.heterogeneous()) {
      for (std::size_t i = 0; i < p.heterogeneity->layout.size(); ++i) {
        os << "," << fmt::share((*r.allocation.per_flavor)(j, i));
      }
      for (std::size_t i = 0; i < p.heterogeneity->layout.size(); ++i) {
        os << "," << fmt::util((*r.flavor_probabilities)(j, i));
      }
    }
    os << "," << fmt::share(r.allocation.per_player[j]) << "," << fmt::util(r.utilities[j]);
    if (r.sampled) os << "," << fmt::share(r.sampled->per_player[j]);
    os << "\n";
  }
  return os.str();
}

inline std::string render_solve_json(const SolveResult& r) {
  using nlohmann::json;
  const auto& p = r.problem;
  json doc;
  doc["beta"] = fmt::round_sig(r.beta);
  doc["mode"] = r.optimum ? "optimized" : "fixed";
  if (r.optimum) {
    doc["boundary"] = r.optimum->boundary;
    doc["degenerate"] = r.optimum->degenerate;
    doc["extremum_residual"] = fmt::round_sig(r.optimum->extremum_residual, 3);
    doc["beta_max"] = fmt::round_sig(r.optimum->beta_max);
  }
  doc["cake_size"] = fmt::round_fixed(p.cake_size, 2);
  doc["total_utility"] = fmt::round_fixed(r.total_utility, 4);
  doc["max_total_utility"] = fmt::round_fixed(detail::max_total_utility(p), 4);
  doc["players"] = json::array();
  for (std::size_t j = 0; j < p.size(); ++j) {
    json pj{{"id", p.players[j].id},
            {"contribution", fmt::round_fixed(p.players[j].contribution, 2)},
            {"need", fmt::round_fixed(p.players[j].need, 2)},
            {"share", fmt::round_fixed(r.allocation.per_player[j], 2)},
            {"utility", fmt::round_fixed(r.utilities[j], 4)}};
    if (r.probabilities) pj["probability"] = fmt::round_fixed((*r.probabilities)[j], 4);
    if (p.heterogeneous()) {
      json shares = json::object();
      json probs = json::object();
      for (std::size_t i = 0; i < p.heterogeneity->layout.size(); ++i) {
        const auto& f = p.heterogeneity->layout.flavors[i];
        shares[f] = fmt::round_fixed((*r.allocation.per_flavor)(j, i), 2);
        probs[f] = fmt::round_fixed((*r.flavor_probabilities)(j, i), 4);
      }
      pj["flavor_shares"] = std::move(shares);
      pj["flavor_probabilities"] = std::move(probs);
    }
    if (r.sampled) pj["sampled_share"] = fmt::round_fixed(r.sampled->per_player[j], 2);
    doc["players"].push_back(std::move(pj));
  }
  if (r.sampled) doc["sampled_units"] = r.sampled_units;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// compare

namespace detail {
inline const char* criterion_title(Criterion c) {
  switch (c) {
    case Criterion::Boltzmann: return "Boltzmann";
    case Criterion::Egalitarian: return "Egalitarian";
    case Criterion::PropContribution: return "Prop I (contribution)";
    case Criterion::PropNeed: return "Prop II (need)";
  }
  return "";
}
inline const char* criterion_short(Criterion c) {
  switch (c) {
    case Criterion::Boltzmann: return "Boltzmann";
    case Criterion::Egalitarian: return "Egalitarian";
    case Criterion::PropContribution: return "Prop I";
    case Criterion::PropNeed: return "Prop II";
  }
  return "";
}
}  // namespace detail

inline std::string render_compare_text(const DivisionProblem& p, const ComparisonReport& rep) {
  std::ostringstream os;
  os << "Division criteria compared (Boltzmann at beta* = " << fmt::beta(rep.beta_star) << ")\n";
  if (rep.totals_only) os << "note: baselines ignore flavors; all criteria are compared on per-player totals\n";
  os << "\n";

  std::vector<std::string> header{"player", "E", "D"};
  for (Criterion c : kCriteria) header.insert(header.end(), {detail::criterion_short(c) + std::string(" N"), "Def", "Utility"});
  TextTable t(header);
  for (std::size_t j = 0; j < p.size(); ++j) {
    std::vector<std::string> row{p.players[j].id, fmt::share(p.players[j].contribution), fmt::share(p.players[j].need)};
    for (Criterion c : kCriteria) {
      const auto& res = rep[c];
      row.insert(row.end(), {fmt::share(res.allocation.per_player[j]), fmt::share(res.deficiency[j]),
                             fmt::util(res.utilities[j])});
    }
    t.add(std::move(row));
  }
  const std::string max_u = fmt::util(detail::max_total_utility(p));
  std::vector<std::string> total{"total utility", "", ""};
  for (Criterion c : kCriteria) total.insert(total.end(), {"", "", fmt::util(rep[c].total_utility)});
  t.add(std::move(total));
  os << t.str() << "(maximum possible total utility " << max_u << ")\n\n";

  os << "criteria by share received, largest first\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    os << "  " << p.players[j].id << ": ";
    for (std::size_t k = 0; k < rep.rankings[j].size(); ++k) {
      os << (k ? " > " : "") << detail::criterion_title(rep.rankings[j][k]);
    }
    os << "\n";
  }
  return os.str();
}

inline std::string render_compare_csv(const DivisionProblem& p, const ComparisonReport& rep) {
  std::ostringstream os;
  os << "player,criterion,share,deficiency,utility,rank,total_utility\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (Criterion c : kCriteria) {
      const auto& res = rep[c];
      const auto& order = rep.rankings[j];
      const auto rank = static_cast<std::size_t>(std::find(order.begin(), order.end(), c) - order.begin()) + 1;
      os << fmt::csv_field(p.players[j].id) << "," << to_string(c) << "," << fmt::share(res.allocation.per_player[j])
         << "," << fmt::share(res.deficiency[j]) << "," << fmt::util(res.utilities[j]) << "," << rank << ","
         << fmt::util(res.total_utility) << "\n";
    }
  }
  return os.str();
}

inline std::string render_compare_json(const DivisionProblem& p, const ComparisonReport& rep) {
  using nlohmann::json;
  json doc;
  doc["beta_star"] = fmt::round_sig(rep.beta_star);
  doc["totals_only"] = rep.totals_only;
  doc["max_total_utility"] = fmt::round_fixed(detail::max_total_utility(p), 4);
  doc["criteria"] = json::array();
  for (Criterion c : kCriteria) {
    const auto& res = rep[c];
    json cj{{"name", to_string(c)}, {"total_utility", fmt::round_fixed(res.total_utility, 4)}};
    cj["players"] = json::array();
    for (std::size_t j = 0; j < p.size(); ++j) {
      cj["players"].push_back({{"id", p.players[j].id},
                               {"share", fmt::round_fixed(res.allocation.per_player[j], 2)},
                               {"deficiency", fmt::round_fixed(res.deficiency[j], 2)},
                               {"utility", fmt::round_fixed(res.utilities[j], 4)}});
    }
    doc["criteria"].push_back(std::move(cj));
  }
  doc["rankings"] = json::array();
  for (std::size_t j = 0; j < p.size(); ++j) {
    json order = json::array();
    for (Criterion c : rep.rankings[j]) order.push_back(to_string(c));
    doc["rankings"].push_back({{"id", p.players[j].id}, {"order", std::move(order)}});
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// curve

inline std::string render_curve_csv(const UtilityCurve& curve) {
  std::ostringstream os;
  os << "beta,total_utility\n";
  for (const auto& s : curve.samples) os << fmt::beta(s.beta) << "," << fmt::util(s.total_utility) << "\n";
  return os.str();
}

inline std::string render_curve_summary(const UtilityCurve& curve) {
  const auto& best = curve.argmax();
  std::ostringstream os;
  os << "argmax beta=" << fmt::beta(best.beta) << " total_utility=" << fmt::util(best.total_utility) << " ("
     << curve.samples.size() << " points";
  if (curve.samples.size() >= 2) {
    os << ", step " << fmt::beta(curve.samples[1].beta - curve.samples[0].beta);
  }
  os << ")\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// diagnose

inline std::string render_diagnose_text(const DivisionProblem& p, const SmallBetaReport& r) {
  std::ostringstream os;
  os << "Small-beta diagnostic: " << p.size() << " player" << (p.size() == 1 ? "" : "s") << ", uniform share "
     << fmt::share(p.cake_size / static_cast<double>(p.size())) << "\n\n";
  TextTable t({"player", "contribution", "need", "slope"});
  for (std::size_t j = 0; j < p.size(); ++j) {
    t.add({p.players[j].id, fmt::share(p.players[j].contribution), fmt::share(p.players[j].need),
           fmt::sig(r.slopes[j])});
  }
  os << t.str() << "\n";
  TextTable s({"mean contribution", fmt::share(r.mean_contribution)});
  s.add({"mean slope", fmt::sig(r.mean_slope)});
  s.add({"lhs = mean(slope * contribution)", fmt::sig(r.lhs)});
  s.add({"rhs = mean(slope) * mean(contribution)", fmt::sig(r.rhs)});
  s.add({"predicts interior maximum", r.predicts_interior_maximum ? "true" : "false"});
  os << s.str();
  return os.str();
}

inline std::string render_diagnose_csv(const DivisionProblem& p, const SmallBetaReport& r) {
  std::ostringstream os;
  os << "player,contribution,need,slope,mean_contribution,mean_slope,lhs,rhs,predicts_interior_maximum\n";
  for (std::size_t j = 0; j < p.size(); ++j) {
    os << fmt::csv_field(p.players[j].id) << "," << fmt::share(p.players[j].contribution) << ","
       << fmt::share(p.players[j].need) << "," << fmt::sig(r.slopes[j]) << "," << fmt::share(r.mean_contribution)
       << "," << fmt::sig(r.mean_slope) << "," << fmt::sig(r.lhs) << "," << fmt::sig(r.rhs) << ","
       << (r.predicts_interior_maximum ? "true" : "false") << "\n";
  }
  return os.str();
}

inline std::string render_diagnose_json(const DivisionProblem& p, const SmallBetaReport& r) {
  using nlohmann::json;
  json doc;
  doc["players"] = json::array();
  for (std::size_t j = 0; j < p.size(); ++j) {
    doc["players"].push_back({{"id", p.players[j].id},
                              {"contribution", fmt::round_fixed(p.players[j].contribution, 2)},
                              {"need", fmt::round_fixed(p.players[j].need, 2)},
                              {"slope", fmt::round_sig(r.slopes[j])}});
  }
  doc["mean_contribution"] = fmt::round_fixed(r.mean_contribution, 2);
  doc["mean_slope"] = fmt::round_sig(r.mean_slope);
  doc["lhs"] = fmt::round_sig(r.lhs);
  doc["rhs"] = fmt::round_sig(r.rhs);
  doc["predicts_interior_maximum"] = r.predicts_interior_maximum;
  return doc.dump(2) + "\n";
}

}  // namespace boltzdiv
