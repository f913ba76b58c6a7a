#ifndef TRANSITION_OPTIMIZER_HPP
#define TRANSITION_OPTIMIZER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "transition/derivative.hpp"
#include "transition/errors.hpp"
#include "transition/model.hpp"

namespace transition {

inline constexpr double kDefaultTolerance = 1e-7;
inline constexpr int kDefaultMaxIterations = 500;
inline constexpr std::size_t kDefaultGridPoints = 10000;

enum class SocSign { negative, zero, positive, boundary };

inline std::string_view to_string(SocSign s) {
  switch (s) {
  case SocSign::negative: return "negative";
  case SocSign::zero: return "zero";
  case SocSign::positive: return "positive";
  case SocSign::boundary: return "boundary";
  }
  return "unknown";
}

struct OptimizationResult {
  Alpha alpha_star;
  double objective_value = 0.0;
  int iterations = 0;
  double bracket_width_final = 0.0;
  double stationarity_residual = 0.0;
  SocSign soc_sign = SocSign::boundary;
};

struct SolverOptions {
  double tolerance = kDefaultTolerance;
  int max_iterations = kDefaultMaxIterations;
  std::size_t grid_points = kDefaultGridPoints;

  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

namespace detail {

template <typename F>
double checked_eval(F& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw NonFiniteObjective("objective is not finite at alpha = " + std::to_string(x));
  return v;
}

/// Relative tie test used for the smaller-alpha tie-break.
inline bool ties(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

inline SocSign classify_curvature(double d2, double fx, double h) {
  const double noise = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(fx)) /
                       (h * h);
  if (d2 < -noise) return SocSign::negative;
  if (d2 > noise) return SocSign::positive;
  return SocSign::zero;
}

} // namespace detail

/// First-derivative magnitude and curvature sign of f at x within [lo, hi].
/// Points closer than one step to either end are reported as boundary with a
/// one-sided slope.
template <typename F>
std::pair<double, SocSign> local_conditions(F&& f, double x, double lo, double hi,
                                            double h = kDerivativeStep) {
  if (x - h >= lo && x + h <= hi) {
    const double d1 = central_difference(f, x, 1, h);
    const double d2 = central_difference(f, x, 2, h);
    return {std::abs(d1), detail::classify_curvature(d2, f(x), h)};
  }
  const double slope = (x - h < lo) ? (f(x + h) - f(x)) / h : (f(x) - f(x - h)) / h;
  return {std::abs(slope), SocSign::boundary};
}

/// Maximizes a scalar objective on [lo, hi] with Brent's method
/// (golden section with parabolic steps). The endpoints are compared against
/// the interior estimate afterwards, so monotone objectives return the
/// correct end. Ties within 1e-12 relative go to the smallest alpha.
template <typename F>
OptimizationResult maximize_scalar(F&& objective, double lo, double hi,
                                   double tol = kDefaultTolerance,
                                   int max_iterations = kDefaultMaxIterations) {
  if (!(lo < hi))
    throw InvalidBracket("invalid bracket: lo (" + std::to_string(lo) + ") must be < hi (" +
                         std::to_string(hi) + ")");
  if (lo < 0.0 || hi > kAlphaMax)
    throw InvalidBracket("invalid bracket: [lo, hi] must lie within [0, 1 - 1e-9]");
  if (!(tol > 0.0)) throw InvalidBracket("tolerance must be positive");

  auto g = [&objective](double x) { return -detail::checked_eval(objective, x); };

  constexpr double kGolden = 0.3819660112501051; // (3 - sqrt 5) / 2
  const double tol1 = 0.25 * tol;
  const double tol2 = 2.0 * tol1;

  double a = lo, b = hi;
  double x = a + kGolden * (b - a), w = x, v = x;
  double fx = g(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  int iter = 0;

  for (; iter < max_iterations; ++iter) {
    const double xm = 0.5 * (a + b);
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;

    bool golden = true;
    if (std::abs(e) > tol1) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (!(std::abs(p) >= std::abs(0.5 * q * etemp) || p <= q * (a - x) || p >= q * (b - x))) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
        golden = false;
      }
    }
    if (golden) {
      e = (x >= xm) ? a - x : b - x;
      d = kGolden * e;
    }

    const double u = (std::abs(d) >= tol1) ? x + d : x + std::copysign(tol1, d);
    const double fu = g(u);
    if (fu <= fx) {
      (u >= x ? a : b) = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      (u < x ? a : b) = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  if (iter == max_iterations)
    throw SolverError("maximize_scalar: no convergence after " + std::to_string(max_iterations) +
                      " iterations");

  // Candidates in ascending alpha so the first maximal one wins ties.
  const double candidates[3] = {lo, x, hi};
  double best_x = lo;
  double best_f = detail::checked_eval(objective, lo);
  for (int i = 1; i < 3; ++i) {
    const double fi = detail::checked_eval(objective, candidates[i]);
    if (fi > best_f && !detail::ties(fi, best_f)) {
      best_x = candidates[i];
      best_f = fi;
    }
  }

  OptimizationResult r;
  r.alpha_star = Alpha{best_x};
  r.objective_value = detail::checked_eval(objective, best_x);
  r.iterations = iter;
  r.bracket_width_final = b - a;
  auto [residual, soc] = local_conditions(objective, best_x, lo, hi);
  r.stationarity_residual = residual;
  r.soc_sign = soc;
  return r;
}

struct GridPoint {
  Alpha alpha;
  double value = 0.0;
};

/// Brute-force argmax over n uniformly spaced points of [lo, hi], endpoints
/// included. The first (smallest-alpha) maximum wins.
template <typename F>
GridPoint grid_argmax(F&& f, double lo, double hi, std::size_t n) {
  if (n < 2) throw InvalidBracket("grid_argmax needs at least two points");
  GridPoint best{Alpha{lo}, f(lo)};
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = (i == n - 1) ? hi : lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best.value) best = {Alpha{x}, v};
  }
  return best;
}

/// True when f(x) >= f(x_i) - slack for every point of an n-point uniform
/// grid on [0, 1 - 1e-9].
template <typename F>
bool grid_dominates(F&& f, double x, std::size_t n = kDefaultGridPoints, double slack = 1e-9) {
  if (n < 2) throw InvalidBracket("grid_dominates needs at least two points");
  const double at_x = f(x);
  const double step = kAlphaMax / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = (i == n - 1) ? kAlphaMax : step * static_cast<double>(i);
    if (at_x < f(xi) - slack) return false;
  }
  return true;
}

struct OptimumDiagnostics {
  double stationarity_residual = 0.0;
  SocSign soc_sign = SocSign::boundary;
  bool grid_dominant = false;
  GridPoint grid_best;
};

/// Checks that alpha_star maximizes profit: numerical stationarity, curvature
/// sign, and dominance over a uniform grid of [0, 1 - 1e-9].
inline OptimumDiagnostics verify_optimum(const FirmParams& f, Alpha alpha_star,
                                         std::size_t grid_points = kDefaultGridPoints) {
  validate(f);
  auto pi = [&f](double x) { return profit(f, Alpha{x}); };
  OptimumDiagnostics d;
  const double h = kDerivativeStep;
  if (alpha_star.value >= h && alpha_star.value <= kAlphaMax - h) {
    d.stationarity_residual = std::abs(profit_derivative(f, alpha_star, 1));
    d.soc_sign = detail::classify_curvature(profit_derivative(f, alpha_star, 2), pi(alpha_star), h);
  } else {
    std::tie(d.stationarity_residual, d.soc_sign) =
        local_conditions(pi, alpha_star.value, 0.0, kAlphaMax);
  }
  d.grid_best = grid_argmax(pi, 0.0, kAlphaMax, grid_points);
  d.grid_dominant = grid_dominates(pi, alpha_star, grid_points);
  return d;
}

/// Maximizes single-period profit over [0, 1 - 1e-9].
inline OptimizationResult optimize_profit(const FirmParams& f, const SolverOptions& opts = {}) {
  validate(f);
  return maximize_scalar([&f](double x) { return profit(f, Alpha{x}); }, 0.0, kAlphaMax,
                         opts.tolerance, opts.max_iterations);
}

} // namespace transition

#endif // TRANSITION_OPTIMIZER_HPP
