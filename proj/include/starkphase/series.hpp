#pragma once

namespace starkphase {

/// Two-term large-detuning series for a sech pulse,
/// α²/(2δ) - α²(α² - 2)/(12δ³) with α = Ω0 T and δ = Δ T.
///
/// This is both the AE2 closed form for the sech pulse and the Stirling
/// expansion of the Rosen-Zener phase; both call sites share it.
inline double sech_two_term_series(double alpha, double delta) {
  const double a2 = alpha * alpha;
  return a2 / (2.0 * delta) - a2 * (a2 - 2.0) / (12.0 * delta * delta * delta);
}

}  // namespace starkphase
