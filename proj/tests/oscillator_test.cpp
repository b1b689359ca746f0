#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fsi/core/potentials.hpp"
#include "fsi/core/stepper.hpp"
#include "fsi/oscillator/energy.hpp"
#include "fsi/oscillator/frequency.hpp"

using namespace fsi;
using X = Extended;

namespace {

class Oscillator : public ::testing::Test {
 protected:
  PrecisionScope digits_{60};
};

X ratio(int a, int b) { return X(a) / X(b); }

double rel(const X& got, const X& want) { return abs((got - want) / want).convert_to<double>(); }

}  // namespace

TEST(StepMatrices, ZeroStepIsIdentity) {
  const auto m = stepMatrix(make4ACB(0.1, 0.4), 1.7, 0.0);
  EXPECT_EQ(m.m11, 1.0);
  EXPECT_EQ(m.m12, 0.0);
  EXPECT_EQ(m.m21, 0.0);
  EXPECT_EQ(m.m22, 1.0);
}

TEST(StepMatrices, LeapfrogHalfTrace) {
  for (double eps : {0.01, 0.1, 0.5, 1.3}) {
    EXPECT_NEAR(stepMatrix(makeSecondOrder(0.0), 1.0, eps).halfTrace(), 1 - eps * eps / 2, 1e-15);
  }
}

TEST(StepMatrices, UnitDeterminant) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> t(-0.1, 0.3), a(-2, 2), e(0.001, 0.8), w(0.5, 2);
  for (int i = 0; i < 1000; ++i) {
    const auto s = i % 2 ? make4ACB(t(rng), a(rng)) : makeSecondOrder(a(rng));
    const auto m = stepMatrix(s, w(rng), e(rng));
    const double scale = std::abs(m.m11 * m.m22) + std::abs(m.m12 * m.m21);
    EXPECT_NEAR(m.det(), 1.0, 10 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale));
  }
}

TEST(StepMatrices, AgreesWithStepper) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> t(-0.1, 0.3), a(-2, 2), e(0.001, 0.5), w(0.5, 2),
      z(-2, 2);
  const double ulp = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 1000; ++i) {
    const auto s = i % 2 ? make4ACB(t(rng), a(rng)) : makeSecondOrder(a(rng));
    const double omega = w(rng);
    const double eps = e(rng);
    const double q = z(rng), p = z(rng);
    const auto out = stepOnce(s, harmonicForce(omega), makeState<double>({q}, {p}), eps);
    const auto m = stepMatrix(s, omega, eps);
    const auto [qm, pm] = m.apply(q, p);
    // ulp measured on the state scale |q| + |p|.
    const double scale = std::abs(q) + std::abs(p);
    EXPECT_NEAR(out.q[0], qm, 10 * ulp * scale);
    EXPECT_NEAR(out.p[0], pm, 10 * ulp * scale);
  }
}

TEST(StepMatrices, PowerMatchesRepeatedProduct) {
  const auto m = stepMatrix(make4ACB(1.0 / 6, 0.0), 1.0, 0.05);
  StepMatrix<double> r;
  for (int i = 0; i < 37; ++i) {
    r = m * r;
  }
  const auto p = matrixPower(m, 37);
  EXPECT_NEAR(p.m11, r.m11, 1e-13);
  EXPECT_NEAR(p.m12, r.m12, 1e-13);
  EXPECT_NEAR(p.m21, r.m21, 1e-13);
  EXPECT_NEAR(p.m22, r.m22, 1e-13);
}

TEST(Frequency, StabilityBoundary) {
  const auto lf = makeSecondOrder(0.0);
  EXPECT_NO_THROW((void)approxFrequency(lf, 1.0, 2.0));
  EXPECT_THROW((void)approxFrequency(lf, 1.0, 2.0001), InstabilityError);
  // Throws exactly when |trace|/2 > 1, scanning ε across the boundary.
  const auto c = make4ACB(1.0 / 6, 0.0);
  for (int i = 1; i < 400; ++i) {
    const double eps = 0.01 * i;
    const bool unstable = std::abs(stepMatrix(c, 1.0, eps).halfTrace()) > 1;
    if (unstable) {
      EXPECT_THROW((void)approxFrequency(c, 1.0, eps), InstabilityError) << eps;
    } else {
      EXPECT_NO_THROW((void)approxFrequency(c, 1.0, eps)) << eps;
    }
  }
}

TEST(Frequency, LeapfrogClosedForm) {
  for (double eps : {0.01, 0.3, 1.0}) {
    EXPECT_NEAR(approxFrequency(makeSecondOrder(0.0), 1.0, eps),
                std::acos(1 - eps * eps / 2) / eps, 1e-14);
  }
  EXPECT_NEAR(approxFrequency(makeSecondOrder(0.0), 1.0, 1e-4), 1.0, 1e-8);
  EXPECT_EQ(approxFrequency(makeSecondOrder(0.0), 1.0, 0.0), 1.0);
}

TEST_F(Oscillator, LeapfrogSeries) {
  const auto r = frequencySeries(makeSecondOrder(X(0)), X(1));
  EXPECT_LT(rel(r.c2, ratio(1, 24)), 1e-20);
  // arccos(1 − ε²/2)/ε = 1 + ε²/24 + 3ε⁴/640 + …
  EXPECT_LT(rel(r.c4, ratio(3, 640)), 1e-15);
}

TEST_F(Oscillator, TakahashiImadaSeries) {
  const auto r = frequencySeries(makeSecondOrder(ratio(1, 24)), X(1));
  EXPECT_LT(abs(r.c2), X("1e-20"));
  EXPECT_LT(rel(r.c4, ratio(-1, 720)), 1e-9);
}

TEST_F(Oscillator, CorrectableFourthOrderHasNoC4) {
  for (const char* t : {"0", "0.1", "0.1666", "0.2"}) {
    const X t0(t);
    const auto r = frequencySeries(make4ACB(t0, correctableAlpha(t0)), X(1));
    EXPECT_LT(abs(r.c2), X("1e-20")) << t;
    EXPECT_LT(abs(r.c4), X("1e-20")) << t;
    EXPECT_GT(abs(r.c6), X("1e-9")) << t;
  }
}

TEST_F(Oscillator, SeriesMatchesClosedForms) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> a(-0.5, 0.5), t(0.0, 0.2);
  for (int i = 0; i < 5; ++i) {
    const auto s2 = makeSecondOrder(X(a(rng)));
    const auto e2 = errorCoefficients(s2);
    const auto r2 = frequencySeries(s2, X(1));
    EXPECT_LT(rel(r2.c2, predictedC2(e2)), 1e-15);
    EXPECT_LT(rel(r2.c4, predictedC4(e2)), 1e-12);

    const auto s4 = make4ACB(X(t(rng)), X(a(rng)));
    const auto e4 = errorCoefficients(s4);
    const auto r4 = frequencySeries(s4, X(1));
    EXPECT_LT(abs(r4.c2), X("1e-20"));
    EXPECT_LT(rel(r4.c4, predictedC4(e4)), 1e-12);
  }
}

TEST_F(Oscillator, OmegaScaling) {
  // Coefficients are expressed in (ωε), so they do not depend on ω.
  const auto a = frequencySeries(make4ACB(X("0.15"), X("0.3")), X(1));
  const auto b = frequencySeries(make4ACB(X("0.15"), X("0.3")), X("2.5"));
  EXPECT_LT(rel(b.c4, a.c4), 1e-15);
  EXPECT_LT(rel(b.c6, a.c6), 1e-10);
}

TEST_F(Oscillator, PhaseErrorAtCallerEps) {
  const auto r = frequencySeries(makeSecondOrder(X(0)), X(1), 4, X("0.1"));
  ASSERT_TRUE(r.phaseErrorPerPeriod.has_value());
  const X wa = acos(1 - X("0.005")) / X("0.1");
  EXPECT_LT(abs(*r.omegaA - wa), X("1e-50"));
  EXPECT_LT(abs(*r.phaseErrorPerPeriod - 2 * pi<X>() * (wa - 1)), X("1e-50"));
}

TEST(Effective, ZeroStep) {
  const auto o = effectiveParams(errorCoefficients(make4ACB(0.1, 0.2)), 1.5, 0.0);
  EXPECT_EQ(o.mStar, 1.0);
  EXPECT_DOUBLE_EQ(o.kStar, 2.25);
}

TEST_F(Oscillator, EffectiveFrequencyAgreesToSixthOrder) {
  const auto s = makeSecondOrder(X(0));
  const auto e = errorCoefficients(s);
  auto gap = [&](const X& eps) {
    return abs(effectiveParams(e, X(1), eps).omegaA() - approxFrequency(s, X(1), eps));
  };
  const X g1 = gap(X("0.1"));
  const X g2 = gap(X("0.05"));
  const double slope = log(g1 / g2).convert_to<double>() / std::log(2.0);
  EXPECT_NEAR(slope, 6.0, 0.1);
}

TEST(Effective, FourthOrderMassForm) {
  const auto e = errorCoefficients(make4ACB(1.0 / 6, 0.0));
  const double eps = 0.1;
  const auto o = effectiveParams(e, 1.0, eps);
  EXPECT_NEAR(o.mStar, 1 / (1 - 4 * std::pow(eps, 4) * e.eTTVTV), 1e-14);
}

TEST_F(Oscillator, ExactRotationHasNoEnergyError) {
  const X w("1.3");
  const auto m = exactFlowMatrix(w, 2 * pi<X>() / w);
  EXPECT_LT(abs(energyChange(m, X("0.7"), X("-0.4"))), X("1e-55"));
}

TEST_F(Oscillator, LeapfrogEnergyIsFourthOrder) {
  const auto r = energyErrorSeries(makeSecondOrder(X(0)), X(1), X(1), X(1));
  ASSERT_TRUE(r.leadingExponent.has_value());
  EXPECT_EQ(*r.leadingExponent, 4);
  EXPECT_NEAR(r.measuredSlope, 4.0, 0.05);
}

TEST_F(Oscillator, TakahashiImadaEnergyIsSixthOrder) {
  const auto r = energyErrorSeries(makeSecondOrder(ratio(1, 24)), X(1), X(1), X(1));
  ASSERT_TRUE(r.leadingExponent.has_value());
  EXPECT_EQ(*r.leadingExponent, 6);
  EXPECT_LT(rel(r.E(6), pi<X>() / 2160), 1e-6);
  EXPECT_LT(rel(predictedE6(errorCoefficients(makeSecondOrder(ratio(1, 24))), X(1), X(1), X(1)),
                pi<X>() / 2160),
            1e-40);
}

TEST_F(Oscillator, E4MatchesClosedForm) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> a(-0.4, 0.4), z(0.3, 1.5);
  for (int i = 0; i < 5; ++i) {
    const auto s = makeSecondOrder(X(a(rng)));
    const X q0(z(rng)), p0(z(rng));
    const auto r = energyErrorSeries(s, X(1), q0, p0);
    EXPECT_LT(rel(r.E(4), predictedE4(errorCoefficients(s), X(1), q0, p0)), 1e-6);
  }
}

TEST_F(Oscillator, E8MatchesClosedForm) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> t(0.0, 0.21), a(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const auto s = make4ACB(X(t(rng)), X(a(rng)));
    const auto r = energyErrorSeries(s, X(1), X(1), X(1));
    ASSERT_TRUE(r.leadingExponent.has_value());
    EXPECT_EQ(*r.leadingExponent, 8);
    EXPECT_LT(rel(r.E(8), predictedE8(errorCoefficients(s), X(1), X(1), X(1))), 1e-4);
  }
}

TEST_F(Oscillator, CorrectableFourthOrderEnergyIsTenthOrder) {
  for (const char* t : {"0.05", "0.12", "0.2"}) {
    const X t0(t);
    const auto r = energyErrorSeries(make4ACB(t0, correctableAlpha(t0)), X(1), X(1), X(1));
    ASSERT_TRUE(r.leadingExponent.has_value()) << t;
    EXPECT_GE(*r.leadingExponent, 10) << t;
  }
}

TEST_F(Oscillator, SpecialStartsVanishToHigherOrder) {
  const auto ti = makeSecondOrder(ratio(1, 24));
  for (auto [q0, p0] : {std::pair{X(0), X(1)}, std::pair{X(1), X(0)}}) {
    const auto r = energyErrorSeries(ti, X(1), q0, p0);
    EXPECT_LT(abs(r.E(4)), X("1e-20"));
    EXPECT_LT(abs(r.E(6)), X("1e-20"));
    if (r.leadingExponent) {
      EXPECT_GE(*r.leadingExponent, 10);
    }
  }
}

TEST(Energy, RejectsTinyN) {
  EXPECT_THROW((void)onePeriodEnergyError(makeSecondOrder(0.0), 1.0, 1.0, 1.0, 3), ValidationError);
  // ε = T/4 is inside the leapfrog limit ε = 2; a large gradient weight
  // pushes trace/2 to 1 − ε²/2 + αε⁴ ≈ 5.9.
  EXPECT_NO_THROW((void)onePeriodEnergyError(makeSecondOrder(0.0), 1.0, 1.0, 1.0, 4));
  EXPECT_THROW((void)onePeriodEnergyError(makeSecondOrder(1.0), 1.0, 1.0, 1.0, 4),
               InstabilityError);
}
