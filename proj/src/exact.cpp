#include "starkphase/exact.hpp"

#include <boost/math/tools/roots.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "starkphase/errors.hpp"
#include "starkphase/series.hpp"
#include "starkphase/specfn.hpp"

namespace starkphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_nonzero(double delta, const char* who) {
  if (delta == 0.0) throw ZeroDetuningError(std::string(who) + ": detuning must be nonzero");
}

template <class PhaseFn>
double continue_in_alpha(PhaseFn&& phase, double alpha, double delta, int steps) {
  if (delta == 0.0 || alpha == 0.0) return phase(alpha);
  if (steps < 1) throw InvalidArgument("phase continuation needs at least one step");
  double acc = 0.0;  // phase(0) = 0
  for (int k = 1; k <= steps; ++k) {
    const double a = alpha * static_cast<double>(k) / steps;
    acc = nearest_branch(phase(a), acc);
  }
  return acc;
}

}  // namespace

double RZParameters::kappa() const { return std::hypot(kappa12, kappa13); }

double rz_phase(double alpha, double delta) {
  if (!(alpha >= 0.0)) throw InvalidArgument("rz_phase: alpha must be >= 0");
  if (alpha == 0.0) return 0.0;
  const Complex z(0.5, 0.5 * delta);
  const std::array<Complex, 2> num = {z, z};
  const std::array<Complex, 2> den = {z - 0.5 * alpha, z + 0.5 * alpha};
  return arg_gamma_ratio(num, den);
}

double rz_phase_continued(double alpha, double delta, int steps) {
  return continue_in_alpha([delta](double a) { return rz_phase(a, delta); }, alpha, delta, steps);
}

double rz_phase_zero_transition(int n, double delta) {
  if (n < 1) throw InvalidArgument("rz_phase_zero_transition: n must be >= 1");
  double phase = n * kPi;
  for (int k = 1; k <= n; ++k) phase -= 2.0 * std::atan(delta / (2.0 * k - 1.0));
  return phase;
}

double design_detuning(double target_phase, int n) {
  if (n < 1) throw InvalidArgument("design_detuning: n must be >= 1");
  const double top = n * kPi;
  if (!(target_phase > 0.0 && target_phase <= top)) {
    std::ostringstream msg;
    msg << "design_detuning: target " << target_phase << " outside (0, " << top << "] for n = " << n;
    throw UnattainableError(msg.str());
  }
  auto residual = [&](double d) { return rz_phase_zero_transition(n, d) - target_phase; };
  if (residual(0.0) >= 0.0 && residual(0.0) <= 1e-15) return 0.0;

  // The phase falls monotonically from nπ to 0; grow the bracket to a sign change.
  double hi = 1.0;
  while (residual(hi) > 0.0) hi *= 2.0;
  double lo = hi == 1.0 ? 0.0 : hi / 2.0;

  std::uintmax_t max_iter = 200;
  auto [a, b] = boost::math::tools::toms748_solve(
      residual, lo, hi, residual(lo), residual(hi),
      [](double x, double y) { return std::abs(x - y) <= 4e-16 * std::max(1.0, std::abs(x)); }, max_iter);
  const double root = std::abs(residual(a)) <= std::abs(residual(b)) ? a : b;
  if (std::abs(residual(root)) > 1e-12) throw UnattainableError("design_detuning: root finder did not converge");
  return root;
}

double ladder_exact_phase(double alpha, double delta) {
  return wrap_to_pi(2.0 * rz_phase(alpha / std::numbers::sqrt2, delta));
}

double ladder_exact_phase_continued(double alpha, double delta, int steps) {
  return 2.0 * rz_phase_continued(alpha / std::numbers::sqrt2, delta, steps);
}

double v_exact_phase(const RZParameters& p) { return rz_phase(p.kappa() * p.alpha, p.delta); }

double v_exact_phase_continued(const RZParameters& p, int steps) {
  return rz_phase_continued(p.kappa() * p.alpha, p.delta, steps);
}

double rz_asymptotic_phase(double alpha, double delta) {
  require_nonzero(delta, "rz_asymptotic_phase");
  return sech_two_term_series(alpha, delta);
}

double ladder_asymptotic_phase(double alpha, double delta) {
  require_nonzero(delta, "ladder_asymptotic_phase");
  const double a2 = alpha * alpha;
  return a2 / (2.0 * delta) - a2 * (a2 - 4.0) / (24.0 * delta * delta * delta);
}

double v_asymptotic_phase(const RZParameters& p) {
  require_nonzero(p.delta, "v_asymptotic_phase");
  return sech_two_term_series(p.kappa() * p.alpha, p.delta);
}

void unwrap_sequence(std::span<double> phases) {
  for (std::size_t i = 1; i < phases.size(); ++i) phases[i] = nearest_branch(phases[i], phases[i - 1]);
}

double nearest_branch(double phase, double reference) {
  if (!std::isfinite(phase) || !std::isfinite(reference)) return phase;
  return phase + kTwoPi * std::round((reference - phase) / kTwoPi);
}

}  // namespace starkphase
