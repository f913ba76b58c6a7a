#ifndef TRANSITION_TOOLS_CLI_APP_HPP
#define TRANSITION_TOOLS_CLI_APP_HPP

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "transition/transition.hpp"

namespace transition::cli {

enum ExitCode : int { kOk = 0, kParse = 2, kValidation = 3, kSolver = 4 };

/// Command-line overrides layered on top of the config file.
struct Flags {
  std::string config;
  std::string param;
  std::string values;
  std::string range;
  std::optional<std::size_t> points;
  std::optional<std::size_t> horizon;
  std::optional<double> discount;
  std::string format;
  std::string out;
  std::string scenario;
  std::string targets;
};

inline std::vector<double> parse_values(const std::string& text) {
  return transition::detail::parse_list(text, "--values");
}

/// "LO:HI:STEP" to the inclusive arithmetic grid.
inline std::vector<double> parse_range(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) throw ParseError("--range expects LO:HI:STEP, got '" + text + "'");
  const double lo = transition::detail::parse_double(text.substr(0, a), "--range LO");
  const double hi = transition::detail::parse_double(text.substr(a + 1, b - a - 1), "--range HI");
  const double step = transition::detail::parse_double(text.substr(b + 1), "--range STEP");
  return arange(lo, hi, step);
}

/// Reads "scenario,horizon,alpha,profit" rows; a header line is optional.
inline std::vector<CalibrationTarget> load_targets(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open targets file '" + path + "'");
  std::vector<CalibrationTarget> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = transition::detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(t);
    while (std::getline(ls, cell, ',')) cells.push_back(transition::detail::trim(cell));
    if (cells.size() != 4)
      throw ParseError("targets line " + std::to_string(lineno) + ": expected 4 fields");
    if (lineno == 1 && cells[0] == "scenario") continue;
    const std::string where = "targets line " + std::to_string(lineno);
    namespace td = transition::detail;
    out.push_back({cells[0], td::parse_count(cells[1], where), td::parse_double(cells[2], where),
                   td::parse_double(cells[3], where)});
  }
  if (out.empty()) throw ParseError("targets file '" + path + "' has no rows");
  return out;
}

namespace detail {

inline void emit(OutputFormat fmt, const Table& table, const nlohmann::json& doc, std::ostream& out,
                 const std::string& preamble = {}) {
  switch (fmt) {
  case OutputFormat::csv:
    table.write_csv(out);
    break;
  case OutputFormat::json:
    out << doc.dump(2) << '\n';
    break;
  case OutputFormat::table:
    if (!preamble.empty()) out << preamble << '\n';
    table.write_pretty(out);
    break;
  }
}

inline ModelInputs inputs(const RunConfig& cfg) { return {cfg.firm, cfg.policy}; }

inline std::string objective_name(const RunConfig& cfg) {
  return cfg.policy ? "policy_profit" : "profit";
}

} // namespace detail

inline void cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  const ModelInputs m = detail::inputs(cfg);
  const OptimizationResult r = optimize(m, cfg.solver);
  const bool dominant = grid_dominates([&m](double x) { return objective(m, Alpha{x}); },
                                       r.alpha_star, cfg.solver.grid_points);
  Table t({"objective", "alpha_star", "objective_value", "iterations", "bracket_width_final",
           "stationarity_residual", "soc_sign", "grid_dominant"});
  t.add({detail::objective_name(cfg), format_number(r.alpha_star), format_number(r.objective_value),
         std::to_string(r.iterations), format_number(r.bracket_width_final),
         format_number(r.stationarity_residual), std::string(to_string(r.soc_sign)),
         dominant ? "true" : "false"});
  nlohmann::json doc;
  doc["config"] = to_json(cfg);
  doc["result"] = optimization_json(r);
  doc["result"]["objective"] = detail::objective_name(cfg);
  doc["result"]["grid_dominant"] = dominant;
  detail::emit(cfg.output.format, t, doc, out);
}

inline void cmd_sensitivity(const RunConfig& cfg, std::ostream& out) {
  const std::vector<SweepRow> rows = sensitivity_table(cfg.firm, cfg.solver);
  nlohmann::json doc;
  doc["config"] = to_json(cfg);
  doc["rows"] = sweep_json(rows);
  detail::emit(cfg.output.format, sweep_table(rows), doc, out);
}

inline void cmd_sweep(const RunConfig& cfg, const Flags& flags, std::ostream& out) {
  if (flags.param.empty()) throw ParseError("sweep needs --param NAME");
  const auto param = parse_parameter(flags.param);
  if (!param) throw DomainError("unknown parameter '" + flags.param + "'");
  ModelInputs base = detail::inputs(cfg);
  if (is_policy_parameter(*param) && !base.policy) base.policy = PolicyParams{};

  std::vector<double> values;
  if (!flags.values.empty()) {
    values = parse_values(flags.values);
  } else if (!flags.range.empty()) {
    values = parse_range(flags.range);
  } else {
    const auto [lo, hi] = default_range(*param, base);
    values = linspace(lo, hi, flags.points.value_or(kDefaultSweepPoints));
  }
  const std::vector<SweepRow> rows = sweep(base, *param, values, cfg.solver);
  nlohmann::json doc;
  RunConfig echoed = cfg;
  echoed.policy = base.policy;
  doc["config"] = to_json(echoed);
  doc["rows"] = sweep_json(rows);
  detail::emit(cfg.output.format, sweep_table(rows), doc, out);
}

inline void cmd_scenario(const RunConfig& cfg, const Flags& flags, std::ostream& out) {
  const ScenarioConfig sc = cfg.scenario.value_or(ScenarioConfig{});
  const std::string name = !flags.scenario.empty() ? flags.scenario : sc.name;
  const std::size_t horizon = flags.horizon.value_or(sc.horizon);
  const double g = flags.discount.value_or(sc.discount);
  if (!(g >= 0.0 && g <= 1.0))
    throw DomainError("discount factor must satisfy 0 <= g <= 1 (got " + std::to_string(g) + ")");

  std::vector<ScenarioPath> paths;
  if (name == "custom") {
    ScenarioConfig custom = sc;
    custom.discount = g;
    paths.push_back(custom_path(custom, cfg.firm));
  } else {
    std::vector<std::string> names;
    if (name == "all")
      names = {"immediate", "quick", "slow"};
    else
      names = {name};
    std::vector<std::size_t> horizons;
    if (horizon == 0)
      horizons = {3, 6};
    else
      horizons = {horizon};
    for (const auto& n : names)
      for (std::size_t h : horizons) paths.push_back(builtin_scenario(n, h, g));
  }

  const std::string source = g == kCalibratedDiscount ? "calibrated" : "override";
  Table t({"scenario", "horizon", "discount", "discount_source", "alpha_star", "max_profit",
           "period_profits"});
  nlohmann::json results = nlohmann::json::array();
  for (const ScenarioPath& path : paths) {
    const ScenarioResult r = optimize_scenario(path, cfg.solver);
    t.add({path.name, std::to_string(path.horizon()), format_number(g), source,
           format_number(r.alpha_star), format_number(r.discounted_profit),
           join_numbers(r.per_period_profits)});
    nlohmann::json j = {{"scenario", path.name},
                        {"horizon", path.horizon()},
                        {"alpha_star", round7(r.alpha_star)},
                        {"max_profit", round7(r.discounted_profit)},
                        {"per_period_profits", rounded(r.per_period_profits)},
                        {"per_period_discounted", rounded(r.per_period_discounted)}};
    if (r.optimization) j["optimization"] = optimization_json(*r.optimization);
    results.push_back(j);
  }
  nlohmann::json doc;
  doc["config"] = to_json(cfg);
  doc["discount"] = g;
  doc["discount_source"] = source;
  doc["results"] = results;
  detail::emit(cfg.output.format, t, doc, out,
               "discount g = " + format_number(g) + " (" + source + ")");
}

inline void cmd_calibrate(const RunConfig& cfg, const Flags& flags, std::ostream& out) {
  const std::vector<CalibrationTarget> targets =
      flags.targets.empty() ? reference_scenario_targets() : load_targets(flags.targets);
  std::vector<double> grid;
  if (!flags.values.empty())
    grid = parse_values(flags.values);
  else if (!flags.range.empty())
    grid = parse_range(flags.range);
  else
    grid = arange(0.5, 1.0, 0.01);

  const CalibrationReport rep = calibrate_discount(targets, grid, cfg.solver);
  Table t({"best_g", "scenario", "horizon", "target_alpha", "target_profit", "fitted_alpha",
           "fitted_profit", "alpha_rel_error_pct", "profit_rel_error_pct"});
  nlohmann::json cells = nlohmann::json::array();
  for (const CalibrationCell& c : rep.cells) {
    t.add({format_number(rep.best_g), c.target.scenario, std::to_string(c.target.horizon),
           format_number(c.target.alpha), format_number(c.target.profit),
           format_number(c.fitted_alpha), format_number(c.fitted_profit),
           format_number(100.0 * c.alpha_rel_error), format_number(100.0 * c.profit_rel_error)});
    cells.push_back({{"scenario", c.target.scenario},
                     {"horizon", c.target.horizon},
                     {"target_alpha", c.target.alpha},
                     {"target_profit", c.target.profit},
                     {"fitted_alpha", round7(c.fitted_alpha)},
                     {"fitted_profit", round7(c.fitted_profit)},
                     {"alpha_rel_error_pct", round7(100.0 * c.alpha_rel_error)},
                     {"profit_rel_error_pct", round7(100.0 * c.profit_rel_error)}});
  }
  nlohmann::json curve = nlohmann::json::array();
  for (const auto& [g, e] : rep.curve) curve.push_back({{"g", round7(g)}, {"error", round7(e)}});
  nlohmann::json doc;
  doc["config"] = to_json(cfg);
  doc["best_g"] = round7(rep.best_g);
  doc["best_error"] = round7(rep.best_error);
  doc["cells"] = cells;
  doc["curve"] = curve;
  detail::emit(cfg.output.format, t, doc, out,
               "best g = " + format_number(rep.best_g) +
                   ", sum of squared relative errors = " + format_number(rep.best_error));
}

/// Parses argv, runs one subcommand and returns the process exit code.
/// Results go to `out` (or the --out file), diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal low-carbon transition investment under carbon pricing"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--config", f.config, "config file (sectioned key = value or JSON)");
  app.add_option("--format", f.format, "output format: csv | json | table");
  app.add_option("--out", f.out, "output path, '-' for stdout");

  auto* optimize_cmd = app.add_subcommand("optimize", "optimal alpha for the configured firm");
  auto* sensitivity_cmd =
      app.add_subcommand("sensitivity", "the +/-10% and +/-50% table for k, c, beta, B");
  auto* scenario_cmd = app.add_subcommand("scenario", "multi-period decarbonization scenarios");
  scenario_cmd->add_option("--scenario", f.scenario, "immediate | quick | slow | none | all | custom");
  scenario_cmd->add_option("--horizon", f.horizon, "3 or 6 (default both)");
  scenario_cmd->add_option("--discount", f.discount, "discount factor g");
  auto* sweep_cmd = app.add_subcommand("sweep", "one-parameter sweep as CSV");
  sweep_cmd->add_option("--param", f.param, "margin, p, c, A, k, beta, B, s1, s2, q1, q2, pr1, pr2");
  sweep_cmd->add_option("--values", f.values, "comma separated values");
  sweep_cmd->add_option("--range", f.range, "LO:HI:STEP");
  sweep_cmd->add_option("--points", f.points, "N points over the default range");
  auto* calibrate_cmd = app.add_subcommand("calibrate", "fit the discount factor to targets");
  calibrate_cmd->add_option("--targets", f.targets, "CSV: scenario,horizon,alpha,profit");
  calibrate_cmd->add_option("--range", f.range, "g grid LO:HI:STEP (default 0.5:1:0.01)");
  calibrate_cmd->add_option("--values", f.values, "explicit g values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error[parse]: " << e.what() << '\n';
    return kParse;
  }

  try {
    RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
    if (!f.format.empty()) cfg.output.format = parse_format(f.format);
    if (!f.out.empty()) cfg.output.path = f.out;
    validate(cfg);

    std::ostringstream buf;
    if (*optimize_cmd) cmd_optimize(cfg, buf);
    else if (*sensitivity_cmd) cmd_sensitivity(cfg, buf);
    else if (*scenario_cmd) cmd_scenario(cfg, f, buf);
    else if (*sweep_cmd) cmd_sweep(cfg, f, buf);
    else if (*calibrate_cmd) cmd_calibrate(cfg, f, buf);

    if (cfg.output.path == "-") {
      out << buf.str();
    } else {
      std::ofstream file(cfg.output.path, std::ios::binary);
      if (!file) throw ParseError("cannot write output file '" + cfg.output.path + "'");
      file << buf.str();
    }
    return kOk;
  } catch (const ParseError& e) {
    err << "error[parse]: " << e.what() << '\n';
    return kParse;
  } catch (const DomainError& e) {
    err << "error[validation]: " << e.what() << '\n';
    return kValidation;
  } catch (const SolverError& e) {
    err << "error[solver]: " << e.what() << '\n';
    return kSolver;
  }
}

} // namespace transition::cli

#endif // TRANSITION_TOOLS_CLI_APP_HPP
