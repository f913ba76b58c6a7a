#ifndef TRANSITION_DERIVATIVE_HPP
#define TRANSITION_DERIVATIVE_HPP

#include <stdexcept>

namespace transition {

/// Step used for every numerical derivative in the library.
inline constexpr double kDerivativeStep = 1e-5;

/// Central finite difference of order 1 or 2 at x with step h.
/// Truncation error is O(h^2) for both orders on smooth f.
template <typename F>
double central_difference(F&& f, double x, int order, double h = kDerivativeStep) {
  switch (order) {
  case 1:
    return (f(x + h) - f(x - h)) / (2.0 * h);
  case 2:
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  default:
    throw std::invalid_argument("central_difference: order must be 1 or 2");
  }
}

} // namespace transition

#endif // TRANSITION_DERIVATIVE_HPP
