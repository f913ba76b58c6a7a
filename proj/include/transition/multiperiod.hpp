#ifndef TRANSITION_MULTIPERIOD_HPP
#define TRANSITION_MULTIPERIOD_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transition/errors.hpp"
#include "transition/model.hpp"
#include "transition/optimizer.hpp"

namespace transition {

/// Discount factor reproducing the Immediate/3-year cell of the reference
/// scenario results; the source tables do not state one.
inline constexpr double kCalibratedDiscount = 0.9;

/// Time-varying inputs of one period. The selling price is shared.
struct PeriodParams {
  double c = 1.6;
  double k = 2.0;
  double beta = 0.8;
  double B = 1.0;
  double A = 100.0;

  friend bool operator==(const PeriodParams&, const PeriodParams&) = default;
};

struct ScenarioPath {
  std::string name = "custom"; ///< immediate | quick | slow | none | custom
  double p = 3.6;
  double g = kCalibratedDiscount;
  std::vector<PeriodParams> periods;

  std::size_t horizon() const { return periods.size(); }
  FirmParams firm(std::size_t t) const {
    const PeriodParams& q = periods.at(t);
    return {p, q.c, q.A, q.k, q.beta, q.B};
  }

  friend bool operator==(const ScenarioPath&, const ScenarioPath&) = default;
};

inline void validate(const ScenarioPath& path) {
  if (path.periods.empty()) throw DomainError("scenario '" + path.name + "' has no periods");
  if (!(path.g >= 0.0 && path.g <= 1.0))
    throw DomainError("discount factor g must satisfy 0 <= g <= 1 (got " + std::to_string(path.g) +
                      ")");
  for (std::size_t t = 0; t < path.horizon(); ++t) {
    try {
      validate(path.firm(t));
    } catch (const DomainError& e) {
      throw DomainError("scenario '" + path.name + "' period " + std::to_string(t + 1) + ": " +
                        e.what());
    }
  }
}

/// Profit of each period at a single, time-constant alpha.
inline std::vector<double> period_profits(const ScenarioPath& path, Alpha alpha) {
  std::vector<double> out;
  out.reserve(path.horizon());
  for (std::size_t t = 0; t < path.horizon(); ++t) out.push_back(profit(path.firm(t), alpha));
  return out;
}

/// sum_t g^t * profit_t with the first period undiscounted.
inline double discounted_objective(const ScenarioPath& path, Alpha alpha) {
  validate(path);
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t t = 0; t < path.horizon(); ++t) {
    total += weight * profit(path.firm(t), alpha);
    weight *= path.g;
  }
  return total;
}

struct ScenarioResult {
  Alpha alpha_star;
  double discounted_profit = 0.0;
  std::vector<double> per_period_profits;
  std::vector<double> per_period_discounted;
  /// Empty for the no-action scenario, where alpha is pinned at zero.
  std::optional<OptimizationResult> optimization;
};

inline ScenarioResult evaluate_scenario(const ScenarioPath& path, Alpha alpha) {
  validate(path);
  ScenarioResult r;
  r.alpha_star = alpha;
  r.per_period_profits = period_profits(path, alpha);
  double weight = 1.0;
  for (double pi : r.per_period_profits) {
    r.per_period_discounted.push_back(weight * pi);
    r.discounted_profit += weight * pi;
    weight *= path.g;
  }
  return r;
}

/// Single alpha maximizing the discounted objective. The "none" scenario
/// never invests, so it is evaluated at alpha = 0 without a search.
inline ScenarioResult optimize_scenario(const ScenarioPath& path, const SolverOptions& opts = {}) {
  validate(path);
  if (path.name == "none") return evaluate_scenario(path, Alpha{0.0});
  const OptimizationResult opt = maximize_scalar(
      [&path](double x) { return discounted_objective(path, Alpha{x}); }, 0.0, kAlphaMax,
      opts.tolerance, opts.max_iterations);
  ScenarioResult r = evaluate_scenario(path, opt.alpha_star);
  r.optimization = opt;
  return r;
}

inline constexpr std::array<std::string_view, 4> kBuiltinScenarios = {"immediate", "quick", "slow",
                                                                      "none"};

/// Reference decarbonization trajectories (six years each). Price p = 3.6 and
/// assets A = 100 are constant.
inline ScenarioPath builtin_scenario(std::string_view name, std::size_t horizon,
                                     double g = kCalibratedDiscount) {
  if (horizon != 3 && horizon != 6)
    throw DomainError("builtin scenario horizon must be 3 or 6 (got " + std::to_string(horizon) +
                      ")");
  struct Series {
    std::array<double, 6> k, c, beta, B;
  };
  Series s;
  if (name == "immediate") {
    s = {{5, 4.5, 4, 3.5, 3, 2.5}, {1.6, 1.7, 1.8, 2, 2.2, 2.4}, {0.9, 0.85, 0.8, 0.75, 0.72, 0.7},
         {4, 4, 4, 4, 4, 4}};
  } else if (name == "quick") {
    s = {{1.5, 5, 4.5, 4, 3.5, 3}, {2.4, 1.6, 1.7, 1.8, 2, 2.2}, {0.6, 0.9, 0.85, 0.8, 0.75, 0.72},
         {3, 3, 3, 3, 3, 3}};
  } else if (name == "slow") {
    s = {{2, 3, 4, 5, 4.5, 4}, {2.2, 1.9, 1.6, 1.7, 1.8, 2}, {0.7, 0.8, 0.9, 0.85, 0.8, 0.75},
         {2, 2, 2, 2, 2, 2}};
  } else if (name == "none") {
    s = {{2, 2, 2, 2, 2, 2}, {1.6, 1.6, 1.6, 1.6, 1.6, 1.6}, {0.8, 0.8, 0.8, 0.8, 0.8, 0.8},
         {1, 1, 1, 1, 1, 1}};
  } else {
    throw DomainError("unknown scenario '" + std::string(name) +
                      "' (expected immediate, quick, slow or none)");
  }
  ScenarioPath path;
  path.name = std::string(name);
  path.p = 3.6;
  path.g = g;
  for (std::size_t t = 0; t < horizon; ++t)
    path.periods.push_back({s.c[t], s.k[t], s.beta[t], s.B[t], 100.0});
  return path;
}

// ---------------------------------------------------------------------------
// Discount-factor calibration

struct CalibrationTarget {
  std::string scenario;
  std::size_t horizon = 3;
  double alpha = 0.0;
  double profit = 0.0;
};

/// Published optimal alpha / max profit for each builtin scenario and horizon.
inline std::vector<CalibrationTarget> reference_scenario_targets() {
  return {
      {"immediate", 3, 0.5692, 173.0291}, {"immediate", 6, 0.6216, 212.0262},
      {"quick", 3, 0.541, 158.3299},      {"quick", 6, 0.5678, 235.1407},
      {"slow", 3, 0.4768, 131.7251},      {"slow", 6, 0.4606, 261.1729},
  };
}

struct CalibrationCell {
  CalibrationTarget target;
  double fitted_alpha = 0.0;
  double fitted_profit = 0.0;
  double alpha_rel_error = 0.0;  ///< (fitted - target) / target
  double profit_rel_error = 0.0;
};

struct CalibrationReport {
  double best_g = 0.0;
  double best_error = 0.0; ///< sum of squared relative errors at best_g
  std::vector<CalibrationCell> cells;
  std::vector<std::pair<double, double>> curve; ///< (g, error) for every grid point
};

namespace detail {

inline double relative_error(double fitted, double target) {
  return target == 0.0 ? fitted : (fitted - target) / target;
}

inline std::vector<CalibrationCell> fit_cells(const std::vector<CalibrationTarget>& targets, double g,
                                              const SolverOptions& opts) {
  std::vector<CalibrationCell> cells;
  cells.reserve(targets.size());
  for (const CalibrationTarget& t : targets) {
    const ScenarioResult r = optimize_scenario(builtin_scenario(t.scenario, t.horizon, g), opts);
    CalibrationCell c{t, r.alpha_star.value, r.discounted_profit, 0.0, 0.0};
    c.alpha_rel_error = relative_error(c.fitted_alpha, t.alpha);
    c.profit_rel_error = relative_error(c.fitted_profit, t.profit);
    cells.push_back(c);
  }
  return cells;
}

} // namespace detail

/// Picks the g on the grid minimizing the summed squared relative errors of
/// optimal alpha and max profit against the targets. Large residuals are
/// reported, not raised. Ties go to the smaller g.
inline CalibrationReport calibrate_discount(const std::vector<CalibrationTarget>& targets,
                                            const std::vector<double>& g_grid,
                                            const SolverOptions& opts = {}) {
  if (g_grid.empty()) throw DomainError("calibration grid is empty");
  for (double g : g_grid)
    if (!(g > 0.0 && g <= 1.0))
      throw DomainError("calibration grid values must lie in (0, 1] (got " + std::to_string(g) + ")");
  if (targets.empty()) throw DomainError("calibration needs at least one target");

  CalibrationReport report;
  bool first = true;
  for (double g : g_grid) {
    std::vector<CalibrationCell> cells = detail::fit_cells(targets, g, opts);
    double err = 0.0;
    for (const CalibrationCell& c : cells)
      err += c.alpha_rel_error * c.alpha_rel_error + c.profit_rel_error * c.profit_rel_error;
    report.curve.emplace_back(g, err);
    if (first || err < report.best_error) {
      report.best_g = g;
      report.best_error = err;
      report.cells = std::move(cells);
      first = false;
    }
  }
  return report;
}

/// Targets produced by the model itself at discount g, one per builtin
/// decarbonization scenario and horizon.
inline std::vector<CalibrationTarget> synthetic_targets(double g, const SolverOptions& opts = {}) {
  std::vector<CalibrationTarget> out;
  for (std::string_view name : {"immediate", "quick", "slow"}) {
    for (std::size_t n : {std::size_t{3}, std::size_t{6}}) {
      const ScenarioResult r = optimize_scenario(builtin_scenario(name, n, g), opts);
      out.push_back({std::string(name), n, r.alpha_star.value, r.discounted_profit});
    }
  }
  return out;
}

} // namespace transition

#endif // TRANSITION_MULTIPERIOD_HPP
