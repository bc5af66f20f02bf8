#pragma once

#include <functional>

namespace starkphase {

inline constexpr double kDefaultQuadratureTol = 1e-12;

struct QuadratureResult {
  double value;
  double error;      // summed |Kronrod - Gauss| estimate
  int intervals;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below abs_tol. Throws QuadratureError if max_intervals is
/// exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = kDefaultQuadratureTol, int max_intervals = 4000);

}  // namespace starkphase
