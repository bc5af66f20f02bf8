#include "starkphase/approx.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "starkphase/errors.hpp"
#include "starkphase/series.hpp"

namespace starkphase {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 12> kMethodTags = {{
    {Method::AE, "ae"},
    {Method::AE2, "ae2"},
    {Method::Adiabatic, "adiabatic"},
    {Method::Superadiabatic, "superadiabatic"},
    {Method::Lossy, "lossy"},
    {Method::AE3Ladder, "ae3_ladder"},
    {Method::AE3V, "ae3_v"},
    {Method::Adiabatic3, "adiabatic3"},
    {Method::Numeric, "numeric"},
    {Method::ExactRZ, "exact_rz"},
    {Method::ExactLadder, "exact_ladder"},
    {Method::ExactV, "exact_v"},
}};

void require_nonzero(double delta, const char* who) {
  if (delta == 0.0) throw ZeroDetuningError(std::string(who) + ": detuning must be nonzero");
}

double sign_of(double delta) { return delta < 0.0 ? -1.0 : 1.0; }

template <class F>
double integrate_over(const PulseShape& pulse, F&& f, const ApproxOptions& opts) {
  const TimeWindow w = pulse.support_window(opts.window_tol);
  return integrate(std::forward<F>(f), w.t_initial, w.t_final, opts.quad_tol).value;
}

TimeWindow union_window(const PulseShape& a, const PulseShape& b, double tol) {
  const TimeWindow wa = a.support_window(tol);
  const TimeWindow wb = b.support_window(tol);
  return {std::min(wa.t_initial, wb.t_initial), std::max(wa.t_final, wb.t_final)};
}

// ½(√(Ω² + Δ²) - |Δ|) written without cancellation.
double half_dressed_shift(double omega_sq, double abs_delta) {
  const double root = std::sqrt(omega_sq + abs_delta * abs_delta);
  const double denom = root + abs_delta;
  return denom > 0.0 ? 0.5 * omega_sq / denom : 0.0;
}

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, tag] : kMethodTags)
    if (m == method) return tag;
  return "unknown";
}

std::optional<Method> method_from_string(std::string_view tag) {
  for (const auto& [m, t] : kMethodTags)
    if (t == tag) return m;
  return std::nullopt;
}

PhaseEstimate phase_ae(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  require_nonzero(delta, "phase_ae");
  if (pulse.omega0() == 0.0) return {Method::AE, 0.0};
  const double value = integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        return w * w / (4.0 * delta);
      },
      opts);
  return {Method::AE, value};
}

double phase_ae2_closed_form(const PulseShape& pulse, double delta) {
  require_nonzero(delta, "phase_ae2");
  const double w0 = pulse.omega0();
  const double T = pulse.width();
  switch (pulse.kind()) {
    case PulseKind::Gaussian: {
      const double sqrt_pi = std::sqrt(std::numbers::pi);
      const double sqrt2 = std::numbers::sqrt2;
      return w0 * w0 * T * sqrt_pi / (4.0 * sqrt2 * delta) -
             w0 * w0 * sqrt_pi * (w0 * w0 * T * T - 4.0 * sqrt2) / (32.0 * delta * delta * delta * T);
    }
    case PulseKind::Sech:
      return sech_two_term_series(w0 * T, delta * T);
    case PulseKind::Tabulated:
      break;
  }
  throw InvalidArgument("phase_ae2_closed_form: no closed form for tabulated pulses");
}

double phase_ae2_quadrature(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  require_nonzero(delta, "phase_ae2");
  if (pulse.omega0() == 0.0) return 0.0;
  const double d3 = 16.0 * delta * delta * delta;
  return integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        const double w2 = w * w;
        return w2 / (4.0 * delta) - (w2 * w2 + 4.0 * w * pulse.second_deriv(t)) / d3;
      },
      opts);
}

PhaseEstimate phase_ae2(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  if (pulse.kind() == PulseKind::Tabulated) return {Method::AE2, phase_ae2_quadrature(pulse, delta, opts)};
  return {Method::AE2, phase_ae2_closed_form(pulse, delta)};
}

PhaseEstimate phase_adiabatic(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  if (pulse.omega0() == 0.0) return {Method::Adiabatic, 0.0};
  const double ad = std::abs(delta);
  const double value = integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        return half_dressed_shift(w * w, ad);
      },
      opts);
  return {Method::Adiabatic, sign_of(delta) * value};
}

PhaseEstimate phase_superadiabatic(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  if (pulse.omega0() == 0.0) return {Method::Superadiabatic, 0.0};
  const double ad = std::abs(delta);
  const double value = integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        const double wd = pulse.deriv(t);
        const double lam2 = w * w + ad * ad;
        // (2 θ̇)² = Ω̇²Δ² / λ⁴ adds to the squared splitting.
        const double corr = lam2 > 0.0 ? wd * wd * ad * ad / (lam2 * lam2) : 0.0;
        return half_dressed_shift(w * w + corr, ad);
      },
      opts);
  return {Method::Superadiabatic, sign_of(delta) * value};
}

PhaseEstimate phase_and_population_lossy(const PulseShape& pulse, double delta, double gamma,
                                         const ApproxOptions& opts) {
  if (!(gamma >= 0.0)) throw InvalidArgument("phase_and_population_lossy: loss rate must be >= 0");
  if (gamma == 0.0) {
    const auto a = phase_adiabatic(pulse, delta, opts);
    return {Method::Lossy, a.phase, 1.0};
  }
  require_nonzero(delta, "phase_and_population_lossy");
  if (pulse.omega0() == 0.0) return {Method::Lossy, 0.0, 1.0};
  const double ad = std::abs(delta);
  const double phase = integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        const double w2 = w * w;
        const double lam = std::sqrt(w2 + ad * ad);
        // sin²2θ = Ω²/λ²
        return half_dressed_shift(w2, ad) - gamma * gamma * w2 / (16.0 * lam * lam * lam);
      },
      opts);
  const double loss_exponent = integrate_over(
      pulse,
      [&](double t) {
        const double w = pulse.value(t);
        const double w2 = w * w;
        const double lam = std::sqrt(w2 + ad * ad);
        // sin²θ = (1 - |Δ|/λ)/2
        return gamma * w2 / (2.0 * lam * (lam + ad));
      },
      opts);
  // |exp(-½∫Γ sin²θ)|² with a real exponent.
  return {Method::Lossy, sign_of(delta) * phase, std::exp(-loss_exponent)};
}

std::optional<double> adiabatic_threshold_detuning(const PulseShape& pulse) {
  const double T = pulse.width();
  switch (pulse.kind()) {
    case PulseKind::Gaussian: {
      const double area_scale = pulse.omega0() * T;
      if (area_scale <= 1.0) throw ThresholdUndefined("Gaussian adiabatic threshold needs Omega0 T > 1");
      return 2.0 / (3.0 * std::sqrt(3.0) * T) * std::sqrt(std::log(area_scale));
    }
    case PulseKind::Sech:
      return 1.0 / (3.0 * std::sqrt(6.0) * T);
    case PulseKind::Tabulated:
      return std::nullopt;
  }
  return std::nullopt;
}

AdiabaticDiagnostics adiabatic_diagnostics(const PulseShape& pulse, double delta, const ApproxOptions& opts) {
  AdiabaticDiagnostics d{};
  d.threshold_detuning = adiabatic_threshold_detuning(pulse);
  const double ad = std::abs(delta);
  const TimeWindow w = pulse.support_window(opts.window_tol);

  auto ratio = [&](double t) {
    const double om = pulse.value(t);
    const double lam2 = om * om + ad * ad;
    if (lam2 == 0.0) return 0.0;
    return std::abs(pulse.deriv(t)) * ad / (2.0 * lam2 * std::sqrt(lam2));
  };

  constexpr int kScan = 2001;
  const double step = (w.t_final - w.t_initial) / (kScan - 1);
  double peak_omega = 0.0;
  double best = -1.0;
  double best_t = w.t_initial;
  for (int i = 0; i < kScan; ++i) {
    const double t = w.t_initial + i * step;
    peak_omega = std::max(peak_omega, pulse.value(t));
    const double r = ratio(t);
    if (r > best) {
      best = r;
      best_t = t;
    }
  }
  if (best > 0.0) {
    const double lo = std::max(w.t_initial, best_t - step);
    const double hi = std::min(w.t_final, best_t + step);
    const auto [t_ref, neg] =
        boost::math::tools::brent_find_minima([&](double t) { return -ratio(t); }, lo, hi, 50);
    best = std::max(best, -neg);
    (void)t_ref;
  }
  if (pulse.kind() != PulseKind::Tabulated) peak_omega = pulse.omega0();
  d.nonadiabatic_ratio_peak = std::max(best, 0.0);
  d.mixing_angle_peak = ad == 0.0 ? (peak_omega > 0.0 ? std::numbers::pi / 4.0 : 0.0)
                                  : 0.5 * std::atan(peak_omega / ad);
  return d;
}

namespace {

void check_two_photon_denominator(const PulseShape& pulse23, double delta2, double delta3, TimeWindow w) {
  const double base = 4.0 * delta2 * delta3;
  if (base == 0.0) throw ZeroDetuningError("phase_ae3_ladder: detunings must be nonzero");
  auto denom = [&](double t) {
    const double v = pulse23.value(t);
    return base - v * v;
  };
  const double floor = 1e-12 * std::max(std::abs(base), pulse23.omega0() * pulse23.omega0());
  constexpr int kScan = 512;
  const double step = (w.t_final - w.t_initial) / (kScan - 1);
  double prev_t = w.t_initial;
  double prev = denom(prev_t);
  for (int i = 1; i < kScan; ++i) {
    const double t = w.t_initial + i * step;
    const double d = denom(t);
    if (std::abs(d) <= floor || (d > 0.0) != (prev > 0.0)) {
      // Bisect for the crossing time to report it.
      double lo = prev_t, hi = t;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((denom(mid) > 0.0) == (prev > 0.0) ? lo : hi) = mid;
      }
      std::ostringstream msg;
      msg << "phase_ae3_ladder: two-photon resonance crossed near t = " << 0.5 * (lo + hi);
      throw TwoPhotonPoleError(msg.str());
    }
    prev = d;
    prev_t = t;
  }
}

}  // namespace

PhaseEstimate phase_ae3_ladder(const PulseShape& pulse12, const PulseShape& pulse23, double delta2, double delta3,
                               const ApproxOptions& opts) {
  require_nonzero(delta2, "phase_ae3_ladder");
  require_nonzero(delta3, "phase_ae3_ladder");
  const TimeWindow w = union_window(pulse12, pulse23, opts.window_tol);
  check_two_photon_denominator(pulse23, delta2, delta3, w);
  if (pulse12.omega0() == 0.0) return {Method::AE3Ladder, 0.0};
  const double base = 4.0 * delta2 * delta3;
  const double value = integrate(
                           [&](double t) {
                             const double a = pulse12.value(t);
                             const double b = pulse23.value(t);
                             return delta3 * a * a / (base - b * b);
                           },
                           w.t_initial, w.t_final, opts.quad_tol)
                           .value;
  return {Method::AE3Ladder, value};
}

AE3LadderExpansion phase_ae3_ladder_expansion(const PulseShape& pulse12, const PulseShape& pulse23, double delta2,
                                              double delta3, const ApproxOptions& opts) {
  require_nonzero(delta2, "phase_ae3_ladder_expansion");
  require_nonzero(delta3, "phase_ae3_ladder_expansion");
  const TimeWindow w = union_window(pulse12, pulse23, opts.window_tol);
  AE3LadderExpansion e{};
  e.leading = phase_ae(pulse12, delta2, opts).phase;
  e.correction = integrate(
                     [&](double t) {
                       const double a = pulse12.value(t);
                       const double b = pulse23.value(t);
                       return a * a * b * b / (16.0 * delta2 * delta2 * delta3);
                     },
                     w.t_initial, w.t_final, opts.quad_tol)
                     .value;
  return e;
}

PhaseEstimate phase_ae3_v(const PulseShape& pulse12, const PulseShape& pulse13, double delta2, double delta3,
                          const ApproxOptions& opts) {
  require_nonzero(delta2, "phase_ae3_v");
  require_nonzero(delta3, "phase_ae3_v");
  return {Method::AE3V, phase_ae(pulse12, delta2, opts).phase + phase_ae(pulse13, delta3, opts).phase};
}

std::array<double, 3> cubic_real_roots(double a, double b, double c) {
  const double p2 = a * a - 3.0 * b;
  const double p = std::sqrt(std::max(p2, 0.0));
  const double scale = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
  if (!(p > 1e-12 * scale)) throw DegenerateError("cubic_real_roots: triple-root vicinity");

  const double cos_beta = std::clamp((9.0 * a * b - 2.0 * a * a * a - 27.0 * c) / (2.0 * p * p * p), -1.0, 1.0);
  const double beta = std::acos(cos_beta);
  const double pi = std::numbers::pi;
  std::array<double, 3> roots = {
      -a / 3.0 - 2.0 * p / 3.0 * std::cos((beta - pi) / 3.0),
      -a / 3.0 - 2.0 * p / 3.0 * std::cos((beta + pi) / 3.0),
      -a / 3.0 + 2.0 * p / 3.0 * std::cos(beta / 3.0),
  };
  // One Newton step recovers the relative accuracy of roots near zero.
  for (double& r : roots) {
    const double f = ((r + a) * r + b) * r + c;
    const double df = (3.0 * r + 2.0 * a) * r + b;
    if (df != 0.0) {
      const double next = r - f / df;
      if (std::abs(next - r) < 1e-6 * std::max(1.0, scale)) r = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::array<double, 3> quasienergies_ladder(double omega12, double omega23, double delta2, double delta3) {
  const double a = -delta2 - delta3;
  const double b = delta2 * delta3 - (omega12 * omega12 + omega23 * omega23) / 4.0;
  const double c = delta3 * omega12 * omega12 / 4.0;
  return cubic_real_roots(a, b, c);
}

std::array<double, 3> quasienergies_v(double omega12, double omega13, double delta2, double delta3) {
  const double a = -delta2 - delta3;
  const double b = delta2 * delta3 - (omega12 * omega12 + omega13 * omega13) / 4.0;
  const double c = (delta3 * omega12 * omega12 + delta2 * omega13 * omega13) / 4.0;
  return cubic_real_roots(a, b, c);
}

namespace {

std::array<double, 3> quasienergies_at(const SystemSpec& spec, double t) {
  const double a = spec.pulse_a.value(t);
  const double b = spec.pulse_b->value(t);
  return spec.variant == SystemVariant::Ladder ? quasienergies_ladder(a, b, spec.detuning2, spec.detuning3)
                                               : quasienergies_v(a, b, spec.detuning2, spec.detuning3);
}

}  // namespace

PhaseEstimate phase_adiabatic3(const SystemSpec& spec, const ApproxOptions& opts) {
  if (spec.variant == SystemVariant::TwoState) throw InvalidArgument("phase_adiabatic3: needs a three-state system");
  spec.validate();
  const TimeWindow w = spec.window(opts.window_tol);
  const double scale = std::max({std::abs(spec.detuning2), std::abs(spec.detuning3), spec.pulse_a.omega0(),
                                 spec.pulse_b->omega0()});
  if (scale == 0.0) return {Method::Adiabatic3, 0.0};

  // Select the branch nearest zero at t_i, then follow it by continuity.
  auto roots = quasienergies_at(spec, w.t_initial);
  std::size_t branch = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(roots[i]) < std::abs(roots[branch])) branch = i;

  constexpr int kScan = 2000;
  const double step = (w.t_final - w.t_initial) / kScan;
  double previous = roots[branch];
  for (int k = 0; k <= kScan; ++k) {
    const double t = w.t_initial + k * step;
    roots = quasienergies_at(spec, t);
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (std::abs(roots[i] - previous) < std::abs(roots[nearest] - previous)) nearest = i;
    double gap = std::numeric_limits<double>::infinity();
    if (branch > 0) gap = std::min(gap, roots[branch] - roots[branch - 1]);
    if (branch < 2) gap = std::min(gap, roots[branch + 1] - roots[branch]);
    if (nearest != branch || gap < 1e-10 * scale) {
      std::ostringstream msg;
      msg << "phase_adiabatic3: quasienergy branch crossing near t = " << t;
      throw BranchCrossError(msg.str());
    }
    previous = roots[branch];
  }

  const double value =
      integrate([&](double t) { return -quasienergies_at(spec, t)[branch]; }, w.t_initial, w.t_final, opts.quad_tol)
          .value;
  return {Method::Adiabatic3, value};
}

double phase_adiabatic3_asymptotic(const SystemSpec& spec, const ApproxOptions& opts) {
  if (spec.variant != SystemVariant::Ladder) throw InvalidArgument("phase_adiabatic3_asymptotic: ladder only");
  require_nonzero(spec.detuning2, "phase_adiabatic3_asymptotic");
  require_nonzero(spec.detuning3, "phase_adiabatic3_asymptotic");
  const TimeWindow w = spec.window(opts.window_tol);
  const double d2 = spec.detuning2;
  const double d3 = spec.detuning3;
  return integrate(
             [&](double t) {
               const double a = spec.pulse_a.value(t);
               const double b = spec.pulse_b->value(t);
               const double root = std::sqrt(d2 * d2 + a * a);
               // Two-state quasienergy connected to state 1.
               const double eps = -sign_of(d2) * 0.5 * a * a / (root + std::abs(d2));
               return -eps - eps * b * b / (4.0 * d3 * root);
             },
             w.t_initial, w.t_final, opts.quad_tol)
      .value;
}

}  // namespace starkphase
