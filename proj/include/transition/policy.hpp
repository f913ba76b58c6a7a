#ifndef TRANSITION_POLICY_HPP
#define TRANSITION_POLICY_HPP

#include <cmath>
#include <string>

#include "transition/errors.hpp"
#include "transition/model.hpp"
#include "transition/optimizer.hpp"

namespace transition {

/// Government intervention inputs. Rates are per unit of output (s1, q1) or
/// per unit of emission (s2, q2); pr1 and pr2 are the probabilities that the
/// subsidy rather than the tax applies on each channel.
struct PolicyParams {
  double s1 = 0.8;  ///< subsidy rate, high carbon price
  double s2 = 0.8;  ///< subsidy rate, low carbon emission
  double q1 = 0.6;  ///< tax rate, low carbon price
  double q2 = 0.6;  ///< tax rate, high carbon emission
  double pr1 = 0.5; ///< P(carbon price >= threshold)
  double pr2 = 0.5; ///< P(emissions <= threshold)

  friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

inline PolicyParams zero_policy() { return {0.0, 0.0, 0.0, 0.0, 0.5, 0.5}; }

inline void validate(const PolicyParams& q) {
  auto fail = [](const std::string& what, double got) {
    throw DomainError("invalid policy parameters: " + what + " (got " + std::to_string(got) + ")");
  };
  auto rate = [&](const char* name, double v) {
    if (!std::isfinite(v) || v < 0.0) fail(std::string(name) + " must satisfy " + name + " >= 0", v);
  };
  rate("s1", q.s1);
  rate("s2", q.s2);
  rate("q1", q.q1);
  rate("q2", q.q2);
  if (!(q.pr1 >= 0.0 && q.pr1 <= 1.0)) fail("pr1 must satisfy 0 <= pr1 <= 1", q.pr1);
  if (!(q.pr2 >= 0.0 && q.pr2 <= 1.0)) fail("pr2 must satisfy 0 <= pr2 <= 1", q.pr2);
}

/// Expected profit after subsidies and taxes: profit plus the expected
/// transfer on output and on emissions.
inline double policy_profit(const FirmParams& f, const PolicyParams& q, Alpha alpha) {
  validate(q);
  const ProfitBreakdown b = profit_breakdown(f, alpha);
  const double output_transfer = q.s1 * b.units * q.pr1 - q.q1 * b.units * (1.0 - q.pr1);
  const double emission_transfer =
      q.s2 * b.carbon_emission * q.pr2 - q.q2 * b.carbon_emission * (1.0 - q.pr2);
  return b.profit + output_transfer + emission_transfer;
}

inline OptimizationResult optimize_policy(const FirmParams& f, const PolicyParams& q,
                                          const SolverOptions& opts = {}) {
  validate(f);
  validate(q);
  return maximize_scalar([&](double x) { return policy_profit(f, q, Alpha{x}); }, 0.0, kAlphaMax,
                         opts.tolerance, opts.max_iterations);
}

} // namespace transition

#endif // TRANSITION_POLICY_HPP
