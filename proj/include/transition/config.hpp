#ifndef TRANSITION_CONFIG_HPP
#define TRANSITION_CONFIG_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "transition/errors.hpp"
#include "transition/model.hpp"
#include "transition/multiperiod.hpp"
#include "transition/optimizer.hpp"
#include "transition/policy.hpp"

// Config files are flat, sectioned key = value text:
//
//   # comment
//   [firm]
//   p = 3.6
//   [policy]            # presence switches on the intervention objective
//   s1 = 0.8
//   [scenario]
//   name = immediate    # immediate | quick | slow | none | all | custom
//   horizon = 3         # 3 | 6; omit for both
//   discount = 0.9
//   c = 1.6, 1.7, 1.8   # custom only: per-period series
//   [solver]
//   tolerance = 1e-7
//   [output]
//   format = csv        # csv | json | table
//   path = out.csv      # "-" is stdout
//
// A JSON object with the same sections (optionally nested under "config")
// is accepted too, so result documents can be fed back in.

namespace transition {

enum class OutputFormat { csv, json, table };

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
  case OutputFormat::csv: return "csv";
  case OutputFormat::json: return "json";
  case OutputFormat::table: return "table";
  }
  return "csv";
}

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "table") return OutputFormat::table;
  throw ParseError("unknown output format '" + std::string(s) + "' (expected csv, json or table)");
}

struct ScenarioConfig {
  std::string name = "all";
  std::size_t horizon = 0; ///< 0 runs both the 3- and 6-year horizons
  double discount = kCalibratedDiscount;
  // Custom trajectories; empty A means 100 in every period.
  std::vector<double> c, k, beta, B, A;
  std::optional<double> p; ///< custom price; firm.p when absent

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct OutputConfig {
  OutputFormat format = OutputFormat::csv;
  std::string path = "-";

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  FirmParams firm;
  std::optional<PolicyParams> policy;
  std::optional<ScenarioConfig> scenario;
  SolverOptions solver;
  OutputConfig output;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws DomainError on the first violated invariant.
inline void validate(const RunConfig& cfg) {
  validate(cfg.firm);
  if (cfg.policy) validate(*cfg.policy);
  if (!(cfg.solver.tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
  if (cfg.solver.max_iterations <= 0) throw DomainError("solver max_iterations must be positive");
  if (cfg.solver.grid_points < 2) throw DomainError("solver grid_points must be at least 2");
  if (cfg.scenario) {
    const ScenarioConfig& s = *cfg.scenario;
    if (s.horizon != 0 && s.horizon != 3 && s.horizon != 6 && s.name != "custom")
      throw DomainError("scenario horizon must be 3 or 6 (got " + std::to_string(s.horizon) + ")");
    if (!(s.discount >= 0.0 && s.discount <= 1.0))
      throw DomainError("discount factor must satisfy 0 <= g <= 1 (got " +
                        std::to_string(s.discount) + ")");
  }
}

/// Builds the custom trajectory described by the [scenario] section.
inline ScenarioPath custom_path(const ScenarioConfig& s, const FirmParams& firm) {
  const std::size_t n = s.c.size();
  if (n == 0) throw DomainError("custom scenario needs per-period series c, k, beta, B");
  auto check = [n](const std::vector<double>& v, const char* name) {
    if (v.size() != n)
      throw DomainError(std::string("custom scenario series '") + name + "' has " +
                        std::to_string(v.size()) + " entries, expected " + std::to_string(n));
  };
  check(s.k, "k");
  check(s.beta, "beta");
  check(s.B, "B");
  if (!s.A.empty()) check(s.A, "A");
  ScenarioPath path;
  path.name = "custom";
  path.p = s.p.value_or(firm.p);
  path.g = s.discount;
  for (std::size_t t = 0; t < n; ++t)
    path.periods.push_back({s.c[t], s.k[t], s.beta[t], s.B[t], s.A.empty() ? 100.0 : s.A[t]});
  validate(path);
  return path;
}

namespace detail {

using Section = std::map<std::string, std::string>;
using Document = std::map<std::string, Section>;

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(std::string_view text, std::string_view where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw ParseError("expected a number for " + std::string(where) + ", got '" + t + "'");
  return v;
}

inline std::vector<double> parse_list(std::string_view text, std::string_view where) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) out.push_back(parse_double(item, where));
  return out;
}

inline std::size_t parse_count(std::string_view text, std::string_view where) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw ParseError("expected a non-negative integer for " + std::string(where) + ", got '" + t +
                     "'");
  return v;
}

inline Document parse_ini(std::string_view text) {
  Document doc;
  std::istringstream in{std::string(text)};
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": unclosed section");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      doc[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ParseError("line " + std::to_string(lineno) + ": key outside of a section");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (doc[section].count(key))
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    doc[section][key] = trim(std::string_view(t).substr(eq + 1));
  }
  return doc;
}

inline std::string json_scalar(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ParseError("expected numbers in list " + where);
      if (!out.empty()) out += ',';
      out += e.dump();
    }
    return out;
  }
  throw ParseError("unsupported JSON value for " + where);
}

inline Document parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("config")) j = j["config"];
  if (!j.is_object()) throw ParseError("JSON config must be an object");
  Document doc;
  for (const auto& [name, body] : j.items()) {
    if (!body.is_object()) throw ParseError("JSON section '" + name + "' must be an object");
    Section& s = doc[name];
    for (const auto& [key, value] : body.items())
      s[key] = json_scalar(value, name + "." + key);
  }
  return doc;
}

inline void reject_unknown(const Section& s, std::string_view section,
                           std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : s) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw ParseError("unknown key '" + key + "' in [" + std::string(section) + "]");
  }
}

inline RunConfig from_document(const Document& doc) {
  RunConfig cfg;
  for (const auto& [name, body] : doc) {
    const std::string where = "[" + name + "]";
    auto num = [&](const std::string& key, double& out) {
      if (auto it = body.find(key); it != body.end()) out = parse_double(it->second, where + " " + key);
    };
    if (name == "firm") {
      reject_unknown(body, name, {"p", "c", "A", "k", "beta", "B"});
      num("p", cfg.firm.p);
      num("c", cfg.firm.c);
      num("A", cfg.firm.A);
      num("k", cfg.firm.k);
      num("beta", cfg.firm.beta);
      num("B", cfg.firm.B);
    } else if (name == "policy") {
      reject_unknown(body, name, {"s1", "s2", "q1", "q2", "pr1", "pr2"});
      PolicyParams q;
      auto pnum = [&](const std::string& key, double& out) { num(key, out); };
      pnum("s1", q.s1);
      pnum("s2", q.s2);
      pnum("q1", q.q1);
      pnum("q2", q.q2);
      pnum("pr1", q.pr1);
      pnum("pr2", q.pr2);
      cfg.policy = q;
    } else if (name == "scenario") {
      reject_unknown(body, name, {"name", "horizon", "discount", "p", "c", "k", "beta", "B", "A"});
      ScenarioConfig s;
      if (auto it = body.find("name"); it != body.end()) s.name = it->second;
      if (auto it = body.find("horizon"); it != body.end())
        s.horizon = parse_count(it->second, where + " horizon");
      num("discount", s.discount);
      if (auto it = body.find("p"); it != body.end()) s.p = parse_double(it->second, where + " p");
      auto list = [&](const std::string& key, std::vector<double>& out) {
        if (auto it = body.find(key); it != body.end()) out = parse_list(it->second, where + " " + key);
      };
      list("c", s.c);
      list("k", s.k);
      list("beta", s.beta);
      list("B", s.B);
      list("A", s.A);
      cfg.scenario = s;
    } else if (name == "solver") {
      reject_unknown(body, name, {"tolerance", "max_iterations", "grid_points"});
      num("tolerance", cfg.solver.tolerance);
      if (auto it = body.find("max_iterations"); it != body.end())
        cfg.solver.max_iterations = static_cast<int>(parse_count(it->second, where + " max_iterations"));
      if (auto it = body.find("grid_points"); it != body.end())
        cfg.solver.grid_points = parse_count(it->second, where + " grid_points");
    } else if (name == "output") {
      reject_unknown(body, name, {"format", "path"});
      if (auto it = body.find("format"); it != body.end()) cfg.output.format = parse_format(it->second);
      if (auto it = body.find("path"); it != body.end()) cfg.output.path = it->second;
    } else {
      throw ParseError("unknown section [" + name + "]");
    }
  }
  return cfg;
}

} // namespace detail

/// Parses config text (sectioned key = value, or JSON when it starts with
/// '{'). Throws ParseError on syntax problems; does not validate ranges.
inline RunConfig parse_config(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool json = first != std::string_view::npos && text[first] == '{';
  return detail::from_document(json ? detail::parse_json(text) : detail::parse_ini(text));
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

inline nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["firm"] = {{"p", cfg.firm.p},       {"c", cfg.firm.c},   {"A", cfg.firm.A},
               {"k", cfg.firm.k},       {"beta", cfg.firm.beta}, {"B", cfg.firm.B}};
  if (cfg.policy) {
    const PolicyParams& q = *cfg.policy;
    j["policy"] = {{"s1", q.s1}, {"s2", q.s2}, {"q1", q.q1},
                   {"q2", q.q2}, {"pr1", q.pr1}, {"pr2", q.pr2}};
  }
  if (cfg.scenario) {
    const ScenarioConfig& s = *cfg.scenario;
    nlohmann::json sj = {{"name", s.name}, {"horizon", s.horizon}, {"discount", s.discount}};
    if (s.p) sj["p"] = *s.p;
    if (!s.c.empty()) sj["c"] = s.c;
    if (!s.k.empty()) sj["k"] = s.k;
    if (!s.beta.empty()) sj["beta"] = s.beta;
    if (!s.B.empty()) sj["B"] = s.B;
    if (!s.A.empty()) sj["A"] = s.A;
    j["scenario"] = sj;
  }
  j["solver"] = {{"tolerance", cfg.solver.tolerance},
                 {"max_iterations", cfg.solver.max_iterations},
                 {"grid_points", cfg.solver.grid_points}};
  j["output"] = {{"format", std::string(to_string(cfg.output.format))}, {"path", cfg.output.path}};
  return j;
}

} // namespace transition

#endif // TRANSITION_CONFIG_HPP
