#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace starkphase {

enum class PulseKind { Gaussian, Sech, Tabulated };

/// Default relative threshold used to truncate pulse tails.
inline constexpr double kDefaultWindowTol = 1e-12;

struct TimeWindow {
  double t_initial;
  double t_final;
};

/// Natural cubic spline through strictly increasing abscissae.
/// Evaluates to zero outside the sample range.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& y() const { return y_; }

 private:
  // Index of the interval [x_i, x_{i+1}] containing t; requires t in range.
  std::size_t interval(double t) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

/// Pulse envelope Omega(t) = omega0 * f(t / width).
///
/// Immutable after construction. Gaussian and sech envelopes carry exact
/// analytic derivatives; tabulated envelopes use a natural cubic spline, so
/// the derivatives jump at the first and last sample.
class PulseShape {
 public:
  static PulseShape gaussian(double omega0, double width = 1.0);
  static PulseShape sech(double omega0, double width = 1.0);
  /// Samples are (t, Omega) pairs, strictly increasing in t, Omega >= 0.
  /// Peak omega0 is the largest sample; width is the time unit (1).
  static PulseShape tabulated(std::vector<std::pair<double, double>> samples);

  PulseKind kind() const { return kind_; }
  double omega0() const { return omega0_; }
  double width() const { return width_; }

  /// Same envelope, peak replaced (tabulated samples are rescaled).
  PulseShape with_omega0(double omega0) const;

  double value(double t) const;
  double deriv(double t) const;
  double second_deriv(double t) const;

  /// Symmetric window outside which value(t) / omega0 <= tol.
  /// Tabulated pulses return their sample range.
  TimeWindow support_window(double tol = kDefaultWindowTol) const;

  /// Tabulated spline (null for analytic shapes).
  const NaturalCubicSpline* spline() const { return spline_.get(); }

 private:
  PulseShape(PulseKind kind, double omega0, double width);

  PulseKind kind_;
  double omega0_;
  double width_;
  std::shared_ptr<const NaturalCubicSpline> spline_;
};

/// Pulse area over the given window (adaptive quadrature).
double pulse_area(const PulseShape& pulse, TimeWindow window);

/// Reads a two-column CSV (t, omega) in units of (T, 1/T). A non-numeric
/// first line is treated as a header.
PulseShape load_pulse_csv(const std::filesystem::path& path);

}  // namespace starkphase
