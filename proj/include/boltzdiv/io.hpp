#pragma once

// Problem files: JSON documents of the form
//
//   { "cake_size": 100,
//     "players": [ { "id": "1", "contribution": 5, "need": 4, "amplitude": 1 }, ... ],
//     "flavors": [ { "name": "vanilla", "size": 25 }, ... ],
//     "preferences": [ [0.25, 0.25, 0.25, 0.25], ... ] }
//
// "cake_size" and "amplitude" are optional; "flavors" and "preferences" come
// together or not at all. Unknown keys are errors.

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "boltzdiv/model.hpp"

namespace boltzdiv {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& detail)
      : Error(ErrorCode::Syntax, "JSON syntax error at line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + detail),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

using nlohmann::json;

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline std::string strip_exception_prefix(const std::string& what) {
  // nlohmann messages look like "[json.exception.parse_error.101] parse error at ...: detail"
  const auto colon = what.find(": ");
  return colon == std::string::npos ? what : what.substr(colon + 2);
}

class FieldReader {
 public:
  std::vector<Violation>& errors() { return errors_; }

  void fail(const std::string& path, const std::string& message) {
    errors_.push_back({ViolationKind::InvalidField, path, message});
  }

  void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) fail(path.empty() ? key : path + "." + key, "unknown key '" + key + "'");
    }
  }

  std::optional<double> number(const json& obj, const char* key, const std::string& path, bool required) {
    const std::string where = path.empty() ? key : path + "." + key;
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(where, "missing required key '" + std::string(key) + "'");
      return std::nullopt;
    }
    if (!it->is_number()) {
      fail(where, "expected a number");
      return std::nullopt;
    }
    return it->get<double>();
  }

  std::optional<std::string> string(const json& obj, const char* key, const std::string& path) {
    const std::string where = path + "." + key;
    const auto it = obj.find(key);
    if (it == obj.end()) {
      fail(where, "missing required key '" + std::string(key) + "'");
      return std::nullopt;
    }
    if (!it->is_string()) {
      fail(where, "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

 private:
  std::vector<Violation> errors_;
};

}  // namespace detail

/// Parses and validates a problem document. Throws SyntaxError for malformed
/// JSON and ValidationError (listing every problem with its JSON path) for
/// schema or invariant violations.
inline DivisionProblem parse_problem(std::string_view text) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = detail::line_column(text, e.byte);
    throw SyntaxError(line, column, detail::strip_exception_prefix(e.what()));
  }

  detail::FieldReader rd;
  if (!doc.is_object()) {
    rd.fail("$", "top-level value must be an object");
    throw ValidationError(std::move(rd.errors()));
  }
  rd.reject_unknown(doc, "", {"cake_size", "players", "flavors", "preferences"});

  DivisionProblem problem;
  if (auto c = rd.number(doc, "cake_size", "", false)) problem.cake_size = *c;

  const auto players = doc.find("players");
  if (players == doc.end()) {
    rd.fail("players", "missing required key 'players'");
  } else if (!players->is_array()) {
    rd.fail("players", "expected an array");
  } else {
    for (std::size_t j = 0; j < players->size(); ++j) {
      const json& pj = (*players)[j];
      const std::string path = "players[" + std::to_string(j) + "]";
      if (!pj.is_object()) {
        rd.fail(path, "expected an object");
        continue;
      }
      rd.reject_unknown(pj, path, {"id", "contribution", "need", "amplitude"});
      Player p;
      if (auto id = rd.string(pj, "id", path)) p.id = *id;
      if (auto v = rd.number(pj, "contribution", path, true)) p.contribution = *v;
      if (auto v = rd.number(pj, "need", path, true)) p.need = *v;
      if (auto v = rd.number(pj, "amplitude", path, false)) p.amplitude = *v;
      problem.players.push_back(std::move(p));
    }
  }

  const auto flavors = doc.find("flavors");
  const auto prefs = doc.find("preferences");
  if ((flavors == doc.end()) != (prefs == doc.end())) {
    rd.fail(flavors == doc.end() ? "preferences" : "flavors", "'flavors' and 'preferences' must be given together");
  } else if (flavors != doc.end()) {
    Heterogeneity h;
    if (!flavors->is_array()) {
      rd.fail("flavors", "expected an array");
    } else {
      for (std::size_t i = 0; i < flavors->size(); ++i) {
        const json& fi = (*flavors)[i];
        const std::string path = "flavors[" + std::to_string(i) + "]";
        if (!fi.is_object()) {
          rd.fail(path, "expected an object");
          continue;
        }
        rd.reject_unknown(fi, path, {"name", "size"});
        auto name = rd.string(fi, "name", path);
        auto size = rd.number(fi, "size", path, true);
        h.layout.flavors.push_back(name.value_or(""));
        h.layout.sizes.push_back(size.value_or(0.0));
      }
    }
    std::vector<std::vector<double>> rows;
    if (!prefs->is_array()) {
      rd.fail("preferences", "expected an array of rows");
    } else {
      for (std::size_t j = 0; j < prefs->size(); ++j) {
        const json& row = (*prefs)[j];
        const std::string path = "preferences[" + std::to_string(j) + "]";
        if (!row.is_array()) {
          rd.fail(path, "expected an array of numbers");
          continue;
        }
        std::vector<double> r;
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (!row[i].is_number()) {
            rd.fail(path + "[" + std::to_string(i) + "]", "expected a number");
            r.push_back(0.0);
          } else {
            r.push_back(row[i].get<double>());
          }
        }
        if (!rows.empty() && r.size() != rows.front().size()) {
          rd.fail(path, "row has " + std::to_string(r.size()) + " entries, expected " +
                            std::to_string(rows.front().size()));
          continue;
        }
        rows.push_back(std::move(r));
      }
    }
    if (rd.errors().empty()) {
      h.preferences.weights = Matrix::from_rows(rows);
      problem.heterogeneity = std::move(h);
    }
  }

  if (!rd.errors().empty()) throw ValidationError(std::move(rd.errors()));
  return validate_problem(std::move(problem));
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading '" + path + "'");
  return ss.str();
}

inline DivisionProblem load_problem(const std::string& path) { return parse_problem(read_text_file(path)); }

inline nlohmann::json problem_to_json(const DivisionProblem& problem) {
  using detail::json;
  json doc;
  doc["cake_size"] = problem.cake_size;
  doc["players"] = json::array();
  for (const auto& p : problem.players) {
    doc["players"].push_back(
        {{"id", p.id}, {"contribution", p.contribution}, {"need", p.need}, {"amplitude", p.amplitude}});
  }
  if (problem.heterogeneity) {
    const auto& h = *problem.heterogeneity;
    doc["flavors"] = json::array();
    for (std::size_t i = 0; i < h.layout.size(); ++i) {
      doc["flavors"].push_back({{"name", h.layout.flavors[i]}, {"size", h.layout.sizes[i]}});
    }
    doc["preferences"] = json::array();
    const Matrix& w = h.preferences.weights;
    for (std::size_t j = 0; j < w.rows(); ++j) {
      doc["preferences"].push_back(std::vector<double>(w.row(j).begin(), w.row(j).end()));
    }
  }
  return doc;
}

}  // namespace boltzdiv
