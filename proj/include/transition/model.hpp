#ifndef TRANSITION_MODEL_HPP
#define TRANSITION_MODEL_HPP

#include <cmath>
#include <string>

#include "transition/derivative.hpp"
#include "transition/errors.hpp"

namespace transition {

/// Upper bound on alpha is 1 - kAlphaGuard; (1 - alpha)^beta has an
/// unbounded derivative at alpha = 1 when beta < 1.
inline constexpr double kAlphaGuard = 1e-9;
inline constexpr double kAlphaMax = 1.0 - kAlphaGuard;

/// Fraction of total assets diverted to low-carbon investment.
struct Alpha {
  double value = 0.0;

  constexpr Alpha() = default;
  constexpr explicit Alpha(double v) : value(v) {}
  constexpr operator double() const { return value; }
};

/// Single-period firm inputs.
struct FirmParams {
  double p = 3.6;    ///< selling price per unit
  double c = 1.6;    ///< production cost per unit
  double A = 100.0;  ///< total assets
  double k = 2.0;    ///< low-carbon production efficiency coefficient
  double beta = 0.8; ///< original productivity coefficient (asset elasticity)
  double B = 1.0;    ///< carbon price per emission unit

  friend bool operator==(const FirmParams&, const FirmParams&) = default;
};

/// Throws DomainError naming the first violated invariant.
inline void validate(const FirmParams& f) {
  auto fail = [](const std::string& what, double got) {
    throw DomainError("invalid firm parameters: " + what + " (got " + std::to_string(got) + ")");
  };
  if (!std::isfinite(f.p)) fail("p must be finite", f.p);
  if (!std::isfinite(f.c) || f.c < 0.0) fail("c must satisfy c >= 0", f.c);
  if (!std::isfinite(f.A) || f.A <= 0.0) fail("A must satisfy A > 0", f.A);
  if (!std::isfinite(f.k) || f.k < 0.0) fail("k must satisfy k >= 0", f.k);
  if (!std::isfinite(f.beta) || f.beta <= 0.0 || f.beta > 1.0)
    fail("beta must satisfy 0 < beta <= 1", f.beta);
  if (!std::isfinite(f.B) || f.B < 0.0) fail("B must satisfy B >= 0", f.B);
}

inline void validate(Alpha a) {
  if (!(a.value >= 0.0 && a.value <= 1.0))
    throw DomainError("alpha must lie in [0, 1] (got " + std::to_string(a.value) + ")");
}

/// 2 * logistic(alpha * k). Equals 1 at alpha*k = 0 and saturates at 2.
inline double sigmoid_gain(double alpha, double k) {
  return 2.0 / (1.0 + std::exp(-alpha * k));
}

/// Emissions per unit of output, 2 - sigmoid_gain. Lies in (0, 1] for alpha*k >= 0.
inline double carbon_intensity(double alpha, double k) {
  // 2 e^{-x} / (1 + e^{-x}) avoids the cancellation in 2 - gain for large x.
  const double e = std::exp(-alpha * k);
  return 2.0 * e / (1.0 + e);
}

/// Production volume: sigmoid_gain * ((1 - alpha) A)^beta.
inline double units(const FirmParams& f, Alpha alpha) {
  validate(f);
  validate(alpha);
  return sigmoid_gain(alpha, f.k) * std::pow((1.0 - alpha.value) * f.A, f.beta);
}

struct ProfitBreakdown {
  double units = 0.0;
  double revenue = 0.0;
  double production_cost = 0.0;
  double carbon_intensity = 0.0;
  double carbon_emission = 0.0;
  double carbon_cost = 0.0;
  double profit = 0.0;
};

inline ProfitBreakdown profit_breakdown(const FirmParams& f, Alpha alpha) {
  ProfitBreakdown r;
  r.units = units(f, alpha);
  r.carbon_intensity = carbon_intensity(alpha, f.k);
  r.revenue = f.p * r.units;
  r.production_cost = f.c * r.units;
  r.carbon_emission = r.carbon_intensity * r.units;
  r.carbon_cost = r.carbon_emission * f.B;
  r.profit = (f.p - f.c - r.carbon_intensity * f.B) * r.units;
  return r;
}

inline double profit(const FirmParams& f, Alpha alpha) {
  return profit_breakdown(f, alpha).profit;
}

/// d^order profit / d alpha^order by central differences.
/// Requires alpha in [h, kAlphaMax - h].
inline double profit_derivative(const FirmParams& f, Alpha alpha, int order,
                                double h = kDerivativeStep) {
  if (order != 1 && order != 2)
    throw DomainError("profit_derivative: order must be 1 or 2");
  if (alpha.value < h || alpha.value > kAlphaMax - h)
    throw DomainError("profit_derivative: alpha " + std::to_string(alpha.value) +
                      " too close to the boundary for step " + std::to_string(h));
  validate(f);
  return central_difference([&f](double x) { return profit(f, Alpha{x}); }, alpha.value, order,
                            h);
}

// Closed forms that keep only the margin factor of the first derivative and
// an alpha-only curvature expression. They do not match the numerical
// derivatives of profit() and exist for comparison tests only.

inline double reduced_first_order_condition(const FirmParams& f, Alpha alpha) {
  const double e = std::exp(-alpha.value * f.k);
  const double assets = std::pow((1.0 - alpha.value) * f.A, f.beta);
  return 2.0 * assets * (-2.0 * f.B * e / (e + 1.0) - f.c + f.p) / (e + 1.0);
}

inline double reduced_second_derivative(const FirmParams& f, Alpha alpha) {
  const double a = alpha.value;
  const double ek = std::exp(a * f.k);
  const double am1 = a - 1.0;
  const double lead = 1.0 / (am1 * am1 * std::pow(ek + 1.0, 3));
  const double inner = -am1 * am1 * f.k * f.k * (ek - 1.0) +
                       (f.beta - 1.0) * f.beta * (ek + 1.0) * (ek + 1.0) +
                       2.0 * am1 * f.beta * f.k * (ek + 1.0);
  return lead * 2.0 * a * ek * std::pow(f.A - a * f.A, f.beta) * inner;
}

} // namespace transition

#endif // TRANSITION_MODEL_HPP
