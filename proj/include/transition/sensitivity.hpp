#ifndef TRANSITION_SENSITIVITY_HPP
#define TRANSITION_SENSITIVITY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "transition/errors.hpp"
#include "transition/model.hpp"
#include "transition/optimizer.hpp"
#include "transition/policy.hpp"

namespace transition {

/// Every scalar a sweep can vary. `margin` is p - c and moves p with c fixed.
enum class Parameter { margin, p, c, A, k, beta, B, s1, s2, q1, q2, pr1, pr2 };

inline constexpr std::array<std::pair<Parameter, std::string_view>, 13> kParameterNames = {{
    {Parameter::margin, "margin"},
    {Parameter::p, "p"},
    {Parameter::c, "c"},
    {Parameter::A, "A"},
    {Parameter::k, "k"},
    {Parameter::beta, "beta"},
    {Parameter::B, "B"},
    {Parameter::s1, "s1"},
    {Parameter::s2, "s2"},
    {Parameter::q1, "q1"},
    {Parameter::q2, "q2"},
    {Parameter::pr1, "pr1"},
    {Parameter::pr2, "pr2"},
}};

inline std::string_view to_string(Parameter p) {
  for (const auto& [id, name] : kParameterNames)
    if (id == p) return name;
  return "unknown";
}

inline std::optional<Parameter> parse_parameter(std::string_view s) {
  for (const auto& [id, name] : kParameterNames)
    if (name == s) return id;
  return std::nullopt;
}

inline bool is_policy_parameter(Parameter p) {
  switch (p) {
  case Parameter::s1:
  case Parameter::s2:
  case Parameter::q1:
  case Parameter::q2:
  case Parameter::pr1:
  case Parameter::pr2:
    return true;
  default:
    return false;
  }
}

/// Firm inputs plus an optional intervention. Without a policy the objective
/// is plain profit, with one it is expected profit after transfers.
struct ModelInputs {
  FirmParams firm;
  std::optional<PolicyParams> policy;
};

inline double objective(const ModelInputs& m, Alpha alpha) {
  return m.policy ? policy_profit(m.firm, *m.policy, alpha) : profit(m.firm, alpha);
}

inline OptimizationResult optimize(const ModelInputs& m, const SolverOptions& opts = {}) {
  return m.policy ? optimize_policy(m.firm, *m.policy, opts) : optimize_profit(m.firm, opts);
}

inline double get(const ModelInputs& m, Parameter p) {
  const PolicyParams q = m.policy.value_or(PolicyParams{});
  switch (p) {
  case Parameter::margin: return m.firm.p - m.firm.c;
  case Parameter::p: return m.firm.p;
  case Parameter::c: return m.firm.c;
  case Parameter::A: return m.firm.A;
  case Parameter::k: return m.firm.k;
  case Parameter::beta: return m.firm.beta;
  case Parameter::B: return m.firm.B;
  case Parameter::s1: return q.s1;
  case Parameter::s2: return q.s2;
  case Parameter::q1: return q.q1;
  case Parameter::q2: return q.q2;
  case Parameter::pr1: return q.pr1;
  case Parameter::pr2: return q.pr2;
  }
  return 0.0;
}

/// Copy of m with one parameter replaced. Setting a policy parameter on
/// inputs without a policy starts from the default intervention.
inline ModelInputs with(ModelInputs m, Parameter p, double v) {
  if (is_policy_parameter(p) && !m.policy) m.policy = PolicyParams{};
  switch (p) {
  case Parameter::margin: m.firm.p = m.firm.c + v; break;
  case Parameter::p: m.firm.p = v; break;
  case Parameter::c: m.firm.c = v; break;
  case Parameter::A: m.firm.A = v; break;
  case Parameter::k: m.firm.k = v; break;
  case Parameter::beta: m.firm.beta = v; break;
  case Parameter::B: m.firm.B = v; break;
  case Parameter::s1: m.policy->s1 = v; break;
  case Parameter::s2: m.policy->s2 = v; break;
  case Parameter::q1: m.policy->q1 = v; break;
  case Parameter::q2: m.policy->q2 = v; break;
  case Parameter::pr1: m.policy->pr1 = v; break;
  case Parameter::pr2: m.policy->pr2 = v; break;
  }
  return m;
}

struct SweepSpec {
  Parameter parameter = Parameter::k;
  std::vector<double> values;
  FirmParams baseline;
};

struct SweepRow {
  Parameter parameter = Parameter::k;
  double parameter_value = 0.0;
  Alpha optimal_alpha;
  double max_objective = 0.0;
  double alpha_change_rate_pct = 0.0;
  double profit_change_rate_pct = 0.0;
  OptimizationResult solve;
};

namespace detail {

inline double change_rate_pct(double x, double base) { return 100.0 * (x - base) / base; }

inline void check_values(const std::vector<double>& values) {
  if (values.empty()) throw DomainError("sweep needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("sweep values must be finite");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw DomainError("sweep values must be strictly increasing");
  }
}

} // namespace detail

/// One-at-a-time sweep of `parameter` over `values`, each row optimized
/// independently. Change rates are relative to the optimum at the baseline.
inline std::vector<SweepRow> sweep(ModelInputs baseline, Parameter parameter,
                                   const std::vector<double>& values,
                                   const SolverOptions& opts = {}) {
  detail::check_values(values);
  if (is_policy_parameter(parameter) && !baseline.policy) baseline.policy = PolicyParams{};
  validate(baseline.firm);
  if (baseline.policy) validate(*baseline.policy);
  // Validate every point before any solve so a bad value fails fast.
  for (double v : values) {
    const ModelInputs m = with(baseline, parameter, v);
    validate(m.firm);
    if (m.policy) validate(*m.policy);
  }

  const double base_value = get(baseline, parameter);
  const OptimizationResult base = optimize(baseline, opts);

  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const OptimizationResult r = (v == base_value) ? base : optimize(with(baseline, parameter, v), opts);
    SweepRow row;
    row.parameter = parameter;
    row.parameter_value = v;
    row.optimal_alpha = r.alpha_star;
    row.max_objective = r.objective_value;
    row.alpha_change_rate_pct = detail::change_rate_pct(r.alpha_star, base.alpha_star);
    row.profit_change_rate_pct = detail::change_rate_pct(r.objective_value, base.objective_value);
    row.solve = r;
    rows.push_back(row);
  }
  return rows;
}

/// Sweep of a firm parameter on plain single-period profit.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SolverOptions& opts = {}) {
  if (is_policy_parameter(spec.parameter))
    throw DomainError("run_sweep varies firm parameters; use policy_sweep for " +
                      std::string(to_string(spec.parameter)));
  return sweep(ModelInputs{spec.baseline, std::nullopt}, spec.parameter, spec.values, opts);
}

/// Sweep of the unit margin p - c, moving p with c held at its baseline.
inline std::vector<SweepRow> margin_sweep(const std::vector<double>& margins,
                                          const FirmParams& baseline = {},
                                          const SolverOptions& opts = {}) {
  return run_sweep({Parameter::margin, margins, baseline}, opts);
}

/// Sweep of an intervention parameter on expected profit after transfers.
inline std::vector<SweepRow> policy_sweep(Parameter parameter, const std::vector<double>& values,
                                          const FirmParams& firm, const PolicyParams& policy,
                                          const SolverOptions& opts = {}) {
  if (!is_policy_parameter(parameter))
    throw DomainError("policy_sweep varies s1, s2, q1, q2, pr1 or pr2, not " +
                      std::string(to_string(parameter)));
  return sweep(ModelInputs{firm, policy}, parameter, values, opts);
}

// ---------------------------------------------------------------------------
// Grids

/// n evenly spaced points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

/// lo, lo + step, ... up to hi (inclusive within a 1e-9 step slack).
inline std::vector<double> arange(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw ParseError("range needs lo <= hi and step > 0");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(lo + step * static_cast<double>(i));
  return out;
}

/// The +/-10% and +/-50% perturbations of a baseline value, with beta capped
/// at 1 and duplicates after capping removed.
inline std::vector<double> perturbation_grid(Parameter p, double base) {
  std::vector<double> out;
  for (double f : {0.5, 0.9, 1.0, 1.1, 1.5}) {
    double v = base * f;
    if (p == Parameter::beta) v = std::min(v, 1.0);
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

/// Default dense range for figure-style sweeps. These ranges are choices of
/// this tool; the reference figures do not publish their endpoints.
inline std::pair<double, double> default_range(Parameter p, const ModelInputs& m) {
  const double base = get(m, p);
  switch (p) {
  case Parameter::margin: return {-0.5, 5.0};
  case Parameter::B: return {0.0, 2.0};
  case Parameter::beta: return {0.5 * base, 1.0};
  case Parameter::pr1:
  case Parameter::pr2: return {0.0, 1.0};
  case Parameter::s1:
  case Parameter::s2:
  case Parameter::q1:
  case Parameter::q2: return {0.0, base > 0.0 ? 2.0 * base : 1.0};
  default: return {0.5 * base, 1.5 * base};
  }
}

inline constexpr std::size_t kDefaultSweepPoints = 200;

/// The four-block table: k, c, beta and B, five perturbations each.
inline std::vector<SweepRow> sensitivity_table(const FirmParams& baseline = {},
                                               const SolverOptions& opts = {}) {
  std::vector<SweepRow> out;
  const ModelInputs m{baseline, std::nullopt};
  for (Parameter p : {Parameter::k, Parameter::c, Parameter::beta, Parameter::B}) {
    auto rows = run_sweep({p, perturbation_grid(p, get(m, p)), baseline}, opts);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

} // namespace transition

#endif // TRANSITION_SENSITIVITY_HPP
