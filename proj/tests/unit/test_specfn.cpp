#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "starkphase/errors.hpp"
#include "starkphase/specfn.hpp"

using namespace starkphase;

namespace {

constexpr double kPi = std::numbers::pi;

struct Reference {
  Complex z;
  Complex log_gamma;
};

// Principal-branch ln Gamma from a 30-digit arbitrary-precision evaluation.
const std::array<Reference, 6> kReferences{{
    {{0.5, 0.5}, {0.11238724280962311252, -0.75072920212205074465}},
    {{2.5, -3.0}, {-1.4709546103488416913, -2.82261563826079945}},
    {{0.1, 7.0}, {-10.854877044420902517, 5.9875701533014403073}},
    {{-2.3, 0.4}, {-0.40520869521992327572, -8.4562336628709438401}},
    {{0.5, 50.0}, {-77.62087780654015822, 145.60198362418754178}},
    {{-0.5, 1.0}, {-0.76436241986147779316, -2.989451660138271845}},
}};

double mod_2pi_distance(double x) { return std::abs(std::remainder(x, 2.0 * kPi)); }

}  // namespace

TEST(LogGamma, ElementaryValues) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(log_gamma(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(log_gamma(0.5).real(), 0.5 * std::log(kPi), 1e-14);
  EXPECT_NEAR(log_gamma(0.5).imag(), 0.0, 1e-15);
}

TEST(LogGamma, MatchesHighPrecisionReferences) {
  for (const auto& r : kReferences) {
    const Complex v = log_gamma(r.z);
    const double scale = std::max(1.0, std::abs(r.log_gamma));
    EXPECT_NEAR(v.real(), r.log_gamma.real(), 1e-12 * scale) << r.z;
    EXPECT_NEAR(v.imag(), r.log_gamma.imag(), 1e-12 * scale) << r.z;
  }
}

TEST(LogGamma, RealArgumentsAgainstFactorials) {
  const std::array<std::pair<double, double>, 4> cases{{
      {0.5, std::sqrt(kPi)}, {1.5, 0.5 * std::sqrt(kPi)}, {5.0, 24.0}, {10.0, 362880.0}}};
  for (const auto& [x, gamma] : cases) {
    const double g = std::exp(log_gamma(x).real());
    EXPECT_LT(std::abs(g - gamma) / gamma, 1e-12) << x;
  }
}

TEST(LogGamma, ReflectionIdentity) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> re(-6.0, 6.0), im(0.05, 12.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z(re(rng), (i % 2 ? 1.0 : -1.0) * im(rng));
    const Complex lhs = log_gamma(z) + log_gamma(1.0 - z);
    const Complex rhs = std::log(kPi / std::sin(kPi * z));
    EXPECT_NEAR(lhs.real(), rhs.real(), 1e-10) << z;
    EXPECT_LT(mod_2pi_distance(lhs.imag() - rhs.imag()), 1e-10) << z;
  }
}

TEST(LogGamma, RecurrenceIdentity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-8.0, 20.0), im(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const Complex z(re(rng), im(rng));
    if (std::abs(z.imag()) < 1e-3) continue;
    const Complex d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    const double scale = std::max(1.0, std::abs(log_gamma(z)));
    EXPECT_NEAR(d.real(), 0.0, 1e-10 * scale) << z;
    EXPECT_LT(mod_2pi_distance(d.imag()), 1e-10 * scale) << z;
  }
}

TEST(LogGamma, ImaginaryPartContinuousInRightHalfPlane) {
  double prev = log_gamma({0.5, 0.0}).imag();
  for (int k = 1; k <= 4000; ++k) {
    const double cur = log_gamma({0.5, 0.025 * k}).imag();
    EXPECT_LT(std::abs(cur - prev), 0.2);
    prev = cur;
  }
}

TEST(LogGamma, PolesThrow) {
  EXPECT_THROW(log_gamma(0.0), PoleError);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  EXPECT_THROW(log_gamma(Complex(-2.0 + 1e-15, 0.0)), PoleError);
  EXPECT_NO_THROW(log_gamma(Complex(-2.0, 1e-6)));
}

TEST(WrapToPi, Range) {
  EXPECT_DOUBLE_EQ(wrap_to_pi(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_to_pi(-kPi), kPi);
  EXPECT_NEAR(wrap_to_pi(3.0 * kPi / 2.0), -kPi / 2.0, 1e-15);
  EXPECT_NEAR(wrap_to_pi(7.0), 7.0 - 2.0 * kPi, 1e-15);
}

TEST(ArgGammaRatio, Examples) {
  const std::array<Complex, 2> ones{1.0, 1.0};
  EXPECT_NEAR(arg_gamma_ratio(ones, ones), 0.0, 1e-15);
  const Complex z(0.5, 0.5);
  const std::array<Complex, 2> num{z, z};
  const std::array<Complex, 2> den{z - 1.0, z + 1.0};
  const std::array<Complex, 2> swapped{z + 1.0, z - 1.0};
  EXPECT_NEAR(arg_gamma_ratio(num, den), kPi / 2.0, 1e-12);
  EXPECT_NEAR(arg_gamma_ratio(num, swapped), arg_gamma_ratio(num, den), 1e-15);
  const std::array<Complex, 1> pole{Complex(0.0, 0.0)};
  EXPECT_THROW(arg_gamma_ratio(pole, ones), PoleError);
}
