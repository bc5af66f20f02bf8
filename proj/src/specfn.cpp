#include "starkphase/specfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "starkphase/errors.hpp"

namespace starkphase {
namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

constexpr double kPoleTol = 1e-14;
constexpr double kReflectBelow = -1000.0;

void check_pole(Complex z) {
  if (std::abs(z.imag()) > kPoleTol || z.real() > 0.5) return;
  const double nearest = std::round(z.real());
  if (std::abs(z.real() - nearest) <= kPoleTol) {
    std::ostringstream msg;
    msg << "log_gamma: pole at z = " << z;
    throw PoleError(msg.str());
  }
}

// Valid for Re z >= 1/2.
Complex lanczos(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex series = kLanczosCoef[0];
  for (std::size_t k = 1; k < kLanczosCoef.size(); ++k) series += kLanczosCoef[k] / (zm1 + static_cast<double>(k));
  const Complex t = zm1 + kLanczosG + 0.5;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return half_log_2pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw InvalidArgument("log_gamma: non-finite argument");
  check_pole(z);
  if (z.real() >= 0.5) return lanczos(z);

  if (z.real() < kReflectBelow) {
    const double pi = std::numbers::pi;
    return std::log(pi) - std::log(std::sin(pi * z)) - lanczos(1.0 - z);
  }

  // ln Gamma(z) = ln Gamma(z + m) - sum_{k<m} ln(z + k); principal logs keep
  // the result on the principal branch.
  const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  Complex acc = 0.0;
  for (int k = 0; k < shift; ++k) acc += std::log(z + static_cast<double>(k));
  return lanczos(z + static_cast<double>(shift)) - acc;
}

double wrap_to_pi(double angle) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double arg_gamma_ratio(std::span<const Complex> numerators, std::span<const Complex> denominators) {
  double im = 0.0;
  for (const Complex& z : numerators) im += log_gamma(z).imag();
  for (const Complex& z : denominators) im -= log_gamma(z).imag();
  return wrap_to_pi(im);
}

}  // namespace starkphase
