#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "starkphase/approx.hpp"
#include "starkphase/dynamics.hpp"
#include "starkphase/errors.hpp"
#include "starkphase/exact.hpp"

using namespace starkphase;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;
const double kSqrt3 = std::numbers::sqrt3;

double mod_2pi(double x) { return std::abs(std::remainder(x, 2 * kPi)); }

struct DesignRow {
  double delta;
  double phase;
};
const std::array<DesignRow, 4> kDesignTable{{{1.0, kPi / 2},
                                             {std::sqrt(3.0), kPi / 3},
                                             {1.0 + std::sqrt(2.0), kPi / 4},
                                             {2.0 + std::sqrt(3.0), kPi / 6}}};

double numeric_two_state(double alpha, double delta) {
  return propagate_ground(SystemSpec::two_state(PulseShape::sech(alpha), delta)).phase1;
}

}  // namespace

TEST(RosenZener, DesignTable) {
  for (const auto& row : kDesignTable) EXPECT_NEAR(rz_phase(2.0, row.delta), row.phase, 1e-10);
}

TEST(RosenZener, NoPulseNoPhase) {
  for (double d : {0.0, 0.3, 5.0}) {
    EXPECT_EQ(rz_phase(0.0, d), 0.0);
    EXPECT_EQ(rz_phase_continued(0.0, d), 0.0);
  }
  EXPECT_THROW(rz_phase(-1.0, 1.0), InvalidArgument);
}

TEST(RosenZener, OddInDetuning) {
  for (double a : {1.0, 3.0})
    for (double d : {0.5, 2.0}) EXPECT_NEAR(rz_phase(a, -d), -rz_phase(a, d), 1e-12);
}

TEST(RosenZener, ZeroTransitionExamples) {
  EXPECT_NEAR(rz_phase_zero_transition(1, 0.0), kPi, 1e-15);
  EXPECT_NEAR(mod_2pi(rz_phase_zero_transition(2, kSqrt3) - kPi), 0.0, 1e-12);
  EXPECT_NEAR(rz_phase_zero_transition(1, 1.0), kPi / 2, 1e-15);
}

TEST(RosenZener, ZeroTransitionMatchesGammaForm) {
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i <= 40; ++i) {
      const double d = 0.25 * i;
      EXPECT_LT(mod_2pi(rz_phase(2.0 * n, d) - rz_phase_zero_transition(n, d)), 1e-10) << n << ' ' << d;
    }
}

TEST(RosenZener, DesignInvertsZeroTransition) {
  for (double target : {kPi / 2, kPi / 3, kPi / 4, kPi / 6, kPi})
    EXPECT_NEAR(rz_phase_zero_transition(1, design_detuning(target, 1)), target, 1e-10);
  EXPECT_NEAR(design_detuning(kPi / 2, 1), 1.0, 1e-10);
  EXPECT_NEAR(design_detuning(kPi / 6, 1), 2.0 + kSqrt3, 1e-10);
  EXPECT_EQ(design_detuning(kPi, 1), 0.0);
  EXPECT_NEAR(rz_phase_zero_transition(3, design_detuning(2.5, 3)), 2.5, 1e-10);
}

TEST(RosenZener, DesignRejectsUnattainableTargets) {
  EXPECT_THROW(design_detuning(0.0, 1), UnattainableError);
  EXPECT_THROW(design_detuning(-0.5, 1), UnattainableError);
  EXPECT_THROW(design_detuning(kPi + 1e-9, 1), UnattainableError);
  EXPECT_THROW(design_detuning(1.0, 0), InvalidArgument);
}

TEST(RosenZener, AgreesWithPropagation) {
  for (double a : {1.0, 2.0, 4.0, 8.0})
    for (double d : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double numeric = numeric_two_state(a, d);
      EXPECT_LT(mod_2pi(rz_phase(a, d) - numeric), 1e-6) << a << ' ' << d;
      EXPECT_NEAR(rz_phase_continued(a, d), numeric, 1e-6) << a << ' ' << d;
    }
}

TEST(RosenZener, TransitionVanishesForEvenAlpha) {
  for (int n : {1, 2})
    for (double d : {0.0, 1.0, 3.0}) {
      const auto r = propagate_ground(SystemSpec::two_state(PulseShape::sech(2.0 * n), d));
      EXPECT_LT(r.populations[1], 1e-8) << n << ' ' << d;
    }
}

TEST(RosenZener, ContinuationIsSmoothInAlpha) {
  double prev = 0.0;
  for (int i = 1; i <= 80; ++i) {
    const double v = rz_phase_continued(0.1 * i, 3.0);
    EXPECT_LT(std::abs(v - prev), 0.5);
    prev = v;
  }
  EXPECT_GT(prev, kPi);  // accumulated beyond the principal range
}

TEST(Ladder, ExactPhaseIsTwiceTwoStateAtReducedCoupling) {
  // The three-state oracle fixes ladder(2√2, 1) = π and the π/2 design at δ = 1 + √2.
  EXPECT_NEAR(ladder_exact_phase(2 * kSqrt2, 1.0), kPi, 1e-10);
  EXPECT_NEAR(ladder_exact_phase(2 * kSqrt2, 1.0 + kSqrt2), kPi / 2, 1e-10);
  EXPECT_LT(mod_2pi(ladder_exact_phase(2 * kSqrt2, 0.0)), 1e-10);
  EXPECT_LT(mod_2pi(ladder_exact_phase(4 * kSqrt2, kSqrt3)), 1e-10);
  EXPECT_EQ(ladder_exact_phase(0.0, 1.0), 0.0);
}

TEST(Ladder, AgreesWithPropagation) {
  for (double a : {kSqrt2, 2 * kSqrt2})
    for (double d : {0.5, 1.0, 2.0}) {
      const auto r = propagate_ground(SystemSpec::ladder(PulseShape::sech(a), PulseShape::sech(a), d, 2 * d));
      EXPECT_LT(mod_2pi(ladder_exact_phase(a, d) - r.phase1), 1e-6) << a << ' ' << d;
      EXPECT_NEAR(ladder_exact_phase_continued(a, d), r.phase1, 1e-6) << a << ' ' << d;
    }
  const auto r = propagate_ground(
      SystemSpec::ladder(PulseShape::sech(4 * kSqrt2), PulseShape::sech(4 * kSqrt2), kSqrt3, 2 * kSqrt3));
  EXPECT_LT(mod_2pi(r.phase1), 1e-6);
}

TEST(VSystem, ReducesToSingleArm) {
  for (double d : {0.5, 2.0}) EXPECT_NEAR(v_exact_phase({1.7, d, 1.0, 0.0}), rz_phase(1.7, d), 1e-14);
  EXPECT_EQ(v_exact_phase({0.0, 1.0, 1.0, 1.0}), 0.0);
  const RZParameters p{kSqrt2, 1.0, 1.0, 1.0};
  EXPECT_NEAR(p.kappa(), kSqrt2, 1e-15);
  // κα = 2: the bright coupling sits on the π/2 design point.
  EXPECT_NEAR(v_exact_phase(p), kPi / 2, 1e-10);
}

TEST(VSystem, AgreesWithPropagation) {
  for (double a : {1.0, 2.0})
    for (double d : {1.0, 2.0}) {
      const auto r = propagate_ground(SystemSpec::v_system(PulseShape::sech(a), PulseShape::sech(a), d, d));
      const RZParameters p{a, d, 1.0, 1.0};
      EXPECT_LT(mod_2pi(v_exact_phase(p) - r.phase1), 1e-6) << a << ' ' << d;
      EXPECT_NEAR(v_exact_phase_continued(p), r.phase1, 1e-6) << a << ' ' << d;
    }
}

TEST(Asymptotics, TwoTermSeries) {
  EXPECT_NEAR(rz_asymptotic_phase(4.0, 20.0), 0.4 - 16.0 * 14.0 / (12.0 * 8000.0), 1e-15);
  EXPECT_NEAR(rz_asymptotic_phase(4.0, 20.0), phase_ae2_closed_form(PulseShape::sech(4.0), 20.0), 1e-14);
  EXPECT_LT(std::abs(rz_asymptotic_phase(2.0, 100.0) - rz_phase(2.0, 100.0)), 1e-4);
  EXPECT_THROW(rz_asymptotic_phase(1.0, 0.0), ZeroDetuningError);
}

TEST(Asymptotics, LadderDiffersOnlyAtThirdOrder) {
  for (double d : {50.0, 400.0}) {
    const double a = 2.0;
    const double lead = a * a / (2 * d);
    EXPECT_NEAR(ladder_asymptotic_phase(a, d) - lead, rz_asymptotic_phase(a, d) - lead + std::pow(a, 4) / (24 * d * d * d),
                1e-15);
  }
  EXPECT_LT(std::abs(ladder_asymptotic_phase(2.0, 60.0) - ladder_exact_phase(2.0, 60.0)), 1e-6);
}

TEST(Asymptotics, VUsesTheBrightCoupling) {
  const RZParameters p{1.5, 30.0, 1.0, 1.0};
  EXPECT_NEAR(v_asymptotic_phase(p), rz_asymptotic_phase(p.kappa() * p.alpha, p.delta), 1e-15);
  EXPECT_NEAR(v_asymptotic_phase(p), v_exact_phase(p), 1e-6);
}

TEST(Unwrap, SequenceAndNearestBranch) {
  std::vector<double> v{3.0, -3.0, -0.5, 2.9, -3.1};
  unwrap_sequence(v);
  EXPECT_NEAR(v[1], 2 * kPi - 3.0, 1e-15);
  EXPECT_NEAR(v[2], 2 * kPi - 0.5, 1e-15);
  EXPECT_EQ(v[3], 2.9);
  EXPECT_NEAR(v[4], 2 * kPi - 3.1, 1e-15);
  for (std::size_t i = 1; i < v.size(); ++i) EXPECT_LE(std::abs(v[i] - v[i - 1]), kPi);
  EXPECT_NEAR(nearest_branch(0.1, 12.0), 0.1 + 4 * kPi, 1e-14);
  EXPECT_NEAR(nearest_branch(-3.0, 3.5), -3.0 + 2 * kPi, 1e-15);
}
