#include "starkphase/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "starkphase/errors.hpp"
#include "starkphase/quadrature.hpp"

namespace starkphase {

NaturalCubicSpline::NaturalCubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidArgument("spline: need at least two (t, value) samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw InvalidArgument("spline: sample times must be strictly increasing");
  }

  // Tridiagonal system for the knot curvatures, natural ends m_0 = m_{n-1} = 0.
  m_.assign(n, 0.0);
  if (n == 2) return;
  std::vector<double> diag(n - 2), upper(n - 2), rhs(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  // Thomas algorithm; the lower band equals the previous row's h0.
  for (std::size_t k = 1; k < diag.size(); ++k) {
    const double lower = x_[k + 1] - x_[k];
    const double w = lower / diag[k - 1];
    diag[k] -= w * upper[k - 1];
    rhs[k] -= w * rhs[k - 1];
  }
  for (std::size_t k = diag.size(); k-- > 0;) {
    double r = rhs[k];
    if (k + 1 < diag.size()) r -= upper[k] * m_[k + 2];
    m_[k + 1] = r / diag[k];
  }
}

std::size_t NaturalCubicSpline::interval(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, x_.size() - 2);
}

double NaturalCubicSpline::value(double t) const {
  if (t < x_.front() || t > x_.back()) return 0.0;
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::deriv(double t) const {
  if (t < x_.front() || t > x_.back()) return 0.0;
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 +
         (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double NaturalCubicSpline::second_deriv(double t) const {
  if (t < x_.front() || t > x_.back()) return 0.0;
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h;
  const double b = (t - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

PulseShape::PulseShape(PulseKind kind, double omega0, double width)
    : kind_(kind), omega0_(omega0), width_(width) {
  if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw InvalidArgument("pulse: omega0 must be finite and >= 0");
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("pulse: width must be finite and > 0");
}

PulseShape PulseShape::gaussian(double omega0, double width) {
  return PulseShape(PulseKind::Gaussian, omega0, width);
}

PulseShape PulseShape::sech(double omega0, double width) { return PulseShape(PulseKind::Sech, omega0, width); }

PulseShape PulseShape::tabulated(std::vector<std::pair<double, double>> samples) {
  std::vector<double> t, y;
  t.reserve(samples.size());
  y.reserve(samples.size());
  double peak = 0.0;
  for (const auto& [ti, yi] : samples) {
    if (!std::isfinite(ti) || !std::isfinite(yi)) throw InvalidArgument("pulse: non-finite tabulated sample");
    if (yi < 0.0) throw InvalidArgument("pulse: negative Rabi frequency in tabulated samples");
    t.push_back(ti);
    y.push_back(yi);
    peak = std::max(peak, yi);
  }
  PulseShape p(PulseKind::Tabulated, peak, 1.0);
  p.spline_ = std::make_shared<const NaturalCubicSpline>(std::move(t), std::move(y));
  return p;
}

PulseShape PulseShape::with_omega0(double omega0) const {
  if (kind_ != PulseKind::Tabulated) return PulseShape(kind_, omega0, width_);
  if (omega0_ == 0.0) {
    if (omega0 == 0.0) return *this;
    throw InvalidArgument("pulse: cannot rescale an all-zero tabulated pulse");
  }
  const double scale = omega0 / omega0_;
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 0; i < spline_->x().size(); ++i) samples.emplace_back(spline_->x()[i], scale * spline_->y()[i]);
  return tabulated(std::move(samples));
}

double PulseShape::value(double t) const {
  const double u = t / width_;
  switch (kind_) {
    case PulseKind::Gaussian:
      return omega0_ * std::exp(-u * u);
    case PulseKind::Sech:
      return omega0_ / std::cosh(u);
    case PulseKind::Tabulated:
      // Spline overshoot between samples is clipped so Omega stays >= 0.
      return std::max(0.0, spline_->value(t));
  }
  return 0.0;
}

double PulseShape::deriv(double t) const {
  const double u = t / width_;
  switch (kind_) {
    case PulseKind::Gaussian:
      return -2.0 * u / width_ * omega0_ * std::exp(-u * u);
    case PulseKind::Sech:
      return -omega0_ / width_ * std::tanh(u) / std::cosh(u);
    case PulseKind::Tabulated:
      return spline_->deriv(t);
  }
  return 0.0;
}

double PulseShape::second_deriv(double t) const {
  const double u = t / width_;
  switch (kind_) {
    case PulseKind::Gaussian:
      return (4.0 * u * u - 2.0) / (width_ * width_) * omega0_ * std::exp(-u * u);
    case PulseKind::Sech: {
      const double s = 1.0 / std::cosh(u);
      return omega0_ / (width_ * width_) * s * (1.0 - 2.0 * s * s);
    }
    case PulseKind::Tabulated:
      return spline_->second_deriv(t);
  }
  return 0.0;
}

TimeWindow PulseShape::support_window(double tol) const {
  if (kind_ == PulseKind::Tabulated) return {spline_->x().front(), spline_->x().back()};
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("support_window: tol must lie in (0, 1)");
  const double half = kind_ == PulseKind::Gaussian ? width_ * std::sqrt(std::log(1.0 / tol))
                                                   : width_ * std::acosh(1.0 / tol);
  return {-half, half};
}

double pulse_area(const PulseShape& pulse, TimeWindow window) {
  auto f = [&pulse](double t) { return pulse.value(t); };
  if (pulse.kind() == PulseKind::Tabulated) {
    // Integrate knot to knot so the piecewise cubic is resolved exactly.
    const auto& x = pulse.spline()->x();
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      const double a = std::max(x[i], window.t_initial);
      const double b = std::min(x[i + 1], window.t_final);
      if (b > a) area += integrate(f, a, b, 1e-13).value;
    }
    return area;
  }
  return integrate(f, window.t_initial, window.t_final, 1e-12 * std::max(1.0, pulse.omega0() * pulse.width())).value;
}

namespace {

bool parse_pair(const std::string& line, double& a, double& b) {
  std::string s = line;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  if (!(in >> a >> b)) return false;
  std::string rest;
  return !(in >> rest);
}

}  // namespace

PulseShape load_pulse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open pulse file " + path.string());
  std::vector<std::pair<double, double>> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double t = 0.0, y = 0.0;
    if (!parse_pair(line, t, y)) {
      if (samples.empty() && lineno == 1) continue;  // header
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected 't,omega'");
    }
    samples.emplace_back(t, y);
  }
  return PulseShape::tabulated(std::move(samples));
}

}  // namespace starkphase
