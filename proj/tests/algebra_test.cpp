#include <gtest/gtest.h>

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <random>

#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/core/scheme.hpp"

using namespace fsi;

namespace {

// Seven-stage frame point of the second-order scheme with gradient weight a.
FamilyPoint<double> secondOrderFrame(double a) { return {0.25, 0.25, 0.0, 1.0, a, 0.0}; }

bool nearPole(double t0) {
  return std::abs(correctableAlphaDenominator(t0)) < 1e-3;
}

// Independent α oracle: bracketed root of eTTVTV − eVTVTV in α at fixed t0.
double alphaByRootFinding(double t0) {
  auto diff = [t0](double a) {
    const auto e = rawErrorCoefficients(familyPoint(t0, a));
    return e.eTTVTV - e.eVTVTV;
  };
  double lo = -1, hi = 1;
  while (diff(lo) * diff(hi) > 0) {
    lo *= 2;
    hi *= 2;
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(
      diff, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return (r.first + r.second) / 2;
}

}  // namespace

TEST(RawCoefficients, SecondOrderEmbedding) {
  for (double a : {0.0, 1.0 / 24, 0.3, -2.0}) {
    const auto e = rawErrorCoefficients(secondOrderFrame(a));
    EXPECT_NEAR(e.eT, 1.0, 1e-15);
    EXPECT_NEAR(e.eV, 1.0, 1e-15);
    EXPECT_NEAR(e.eTTV, -1.0 / 24, 1e-15);
    EXPECT_NEAR(e.eVTV, a - 1.0 / 12, 1e-15);
    EXPECT_NEAR(e.eTTVTV, 1.0 / 480 - a / 24, 1e-15);
    EXPECT_NEAR(e.eVTVTV, 1.0 / 120 - a / 6, 1e-15);
  }
  const auto e0 = rawErrorCoefficients(secondOrderFrame(0));
  EXPECT_NEAR(e0.eTTVTV, 1.0 / 480, 1e-15);
  EXPECT_NEAR(e0.eVTVTV, 1.0 / 120, 1e-15);
}

TEST(RawCoefficients, ZeroSchemeIsZero) {
  const auto e = rawErrorCoefficients(FamilyPoint<double>{});
  for (double x : {e.eT, e.eV, e.eTTV, e.eVTV, e.eTTTTV, e.eVTTTV, e.eTTVTV, e.eVTVTV}) {
    EXPECT_EQ(x, 0.0);
  }
}

TEST(RawCoefficients, SchemeFrameMatchesConstructors) {
  const auto lf = errorCoefficients(makeSecondOrder(0.2));
  EXPECT_NEAR(lf.eVTV, 0.2 - 1.0 / 12, 1e-15);
  const auto c = errorCoefficients(make4ACB(1.0 / 6, 0.0));
  EXPECT_NEAR(c.eTTVTV, -1.0 / 1920, 1e-15);
  EXPECT_NEAR(c.eVTVTV, -7.0 / 15360, 1e-15);
  // Five-stage drift-first layout embeds with v2 = 0.
  SplittingScheme<double> five;
  five.name = "five";
  five.nominalOrder = 2;
  five.stages = {drift(0.2), kick(0.5, 0.01), drift(0.6), kick(0.5, 0.01), drift(0.2)};
  const auto p = familyFrame(five);
  EXPECT_DOUBLE_EQ(p.t1, 0.3);
  EXPECT_DOUBLE_EQ(p.u0, 0.02);
  EXPECT_DOUBLE_EQ(p.alpha, 1.0);
  // A kick-first layout is outside the frame.
  SplittingScheme<double> kdk;
  kdk.name = "kdk";
  kdk.stages = {kick(0.5), drift(1.0), kick(0.5)};
  EXPECT_THROW((void)errorCoefficients(kdk), CapabilityError);
}

TEST(FamilyPoints, AlgorithmC) {
  const auto p = familyPoint(1.0 / 6, 0.0);
  EXPECT_NEAR(p.t1, 1.0 / 3, 1e-15);
  EXPECT_NEAR(p.v1, 3.0 / 8, 1e-15);
  EXPECT_NEAR(p.v2, 1.0 / 4, 1e-15);
  EXPECT_NEAR(p.u0, 1.0 / 192, 1e-15);
}

TEST(FamilyPoints, TZero) {
  const auto p = familyPoint(0.0, 0.0);
  EXPECT_NEAR(p.v1, 1.0 / 6, 1e-15);
  EXPECT_NEAR(p.v2, 2.0 / 3, 1e-15);
  EXPECT_NEAR(p.u0, 1.0 / 72, 1e-15);
}

TEST(FamilyPoints, FourthOrderConditions) {
  for (int i = 0; i <= 100; ++i) {
    const double t0 = -0.2 + 0.65 * i / 100;
    const auto e = rawErrorCoefficients(familyPoint(t0, 0.37));
    EXPECT_NEAR(e.eT, 1.0, 1e-12);
    EXPECT_NEAR(e.eV, 1.0, 1e-12);
    EXPECT_NEAR(e.eTTV, 0.0, 1e-12);
    EXPECT_NEAR(e.eVTV, 0.0, 1e-12);
  }
  EXPECT_THROW((void)familyPoint(0.5, 0.0), DomainError);
  EXPECT_THROW((void)fourthFamilyCoefficients(0.5, 0.0), DomainError);
}

TEST(FourthFamily, TZeroAlphaZero) {
  const auto [ttvtv, vtvtv] = fourthFamilyCoefficients(0.0, 0.0);
  EXPECT_NEAR(ttvtv, 1.0 / 2880, 1e-16);
  EXPECT_NEAR(vtvtv, 1.0 / 4320, 1e-16);
}

TEST(FourthFamily, ClosedFormMatchesRawRouteOnGrid) {
  for (int i = 0; i < 100; ++i) {
    const double t0 = 0.21 * i / 99;
    for (double a : {-1.0, 0.0, 0.5, 2.0}) {
      const auto [ttvtv, vtvtv] = fourthFamilyCoefficients(t0, a);
      const auto e = rawErrorCoefficients(familyPoint(t0, a));
      EXPECT_NEAR(ttvtv, e.eTTVTV, 1e-12);
      EXPECT_NEAR(vtvtv, e.eVTVTV, 1e-12);
    }
  }
}

TEST(FourthFamily, ClosedFormMatchesRawRouteRandom) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> t(-0.3, 0.4);
  std::uniform_real_distribution<double> a(-3, 3);
  for (int i = 0; i < 500; ++i) {
    const double t0 = t(rng);
    const double al = a(rng);
    const auto [ttvtv, vtvtv] = fourthFamilyCoefficients(t0, al);
    const auto e = rawErrorCoefficients(familyPoint(t0, al));
    EXPECT_NEAR(ttvtv, e.eTTVTV, 1e-12 * (1 + std::abs(ttvtv)));
    EXPECT_NEAR(vtvtv, e.eVTVTV, 1e-12 * (1 + std::abs(vtvtv)));
  }
}

TEST(CorrectableAlpha, EqualisesCoefficientsOnGrid) {
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const double t0 = 0.21 * i / 199;
    if (nearPole(t0)) {
      continue;
    }
    const double a = correctableAlpha(t0);
    const auto [ttvtv, vtvtv] = fourthFamilyCoefficients(t0, a);
    EXPECT_NEAR(ttvtv, vtvtv, 1e-12) << t0;
    EXPECT_NEAR(a, alphaByRootFinding(t0), 1e-10 * (1 + std::abs(a))) << t0;
    ++checked;
  }
  EXPECT_GT(checked, 190);
}

TEST(CorrectableAlpha, PoleDetected) {
  const double pole = 0.13882413776781183;
  EXPECT_THROW((void)correctableAlpha(pole), PoleError);
  EXPECT_NO_THROW((void)correctableAlpha(pole + 1e-6));
  // Divergence on approach: |α| grows like 1/|t0 − pole|.
  for (double side : {-1.0, 1.0}) {
    const double far = std::abs(correctableAlpha(pole + side * 1e-5));
    const double near = std::abs(correctableAlpha(pole + side * 1e-6));
    EXPECT_GT(near, 1e3);
    EXPECT_NEAR(near / far, 10.0, 0.1);
  }
}

TEST(CorrectableAlpha, DifferenceIsAffineInAlpha) {
  for (double t0 : {0.0, 0.05, 1.0 / 6, 0.2, 0.3}) {
    auto d = [t0](double a) {
      const auto [x, y] = fourthFamilyCoefficients(t0, a);
      return x - y;
    };
    const double d0 = d(-1), d1 = d(0.5), d2 = d(2);
    // Collinearity of three points.
    EXPECT_NEAR((d1 - d0) / 1.5, (d2 - d1) / 1.5, 1e-14);
  }
}

TEST(CorrectableAlpha, NoRealSimultaneousZero) {
  // eTTVTV is affine in α; on its zero line α_T(t0), eVTVTV keeps one sign.
  double minAbs = 1e300;
  int sign = 0;
  for (int i = 0; i <= 600000; ++i) {
    const double t0 = -3 + 6.0 * i / 600000;
    const double w = 5 - 60 * t0 - 240 * t0 * t0 * (t0 - 1);
    if (std::abs(1 - 2 * t0) < 1e-6 || std::abs(w) < 1e-12) {
      continue;
    }
    const double aT = (12 * t0 - 1) / w;
    const auto [ttvtv, vtvtv] = fourthFamilyCoefficients(t0, aT);
    ASSERT_LT(std::abs(ttvtv), 1e-12);
    const int s = vtvtv > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    }
    EXPECT_EQ(s, sign) << t0;
    minAbs = std::min(minAbs, std::abs(vtvtv));
  }
  EXPECT_GT(minAbs, 1e-6);
}

TEST(Correctability, SecondOrderPredicates) {
  EXPECT_TRUE(isCorrectableSecondOrder(errorCoefficients(makeSecondOrder(1.0 / 24))));
  EXPECT_FALSE(isCorrectableSecondOrder(errorCoefficients(makeSecondOrder(0.0))));
  const auto ti = errorCoefficients(makeSecondOrder(1.0 / 24));
  EXPECT_NEAR(ti.eTTV, -1.0 / 24, 1e-15);
  EXPECT_NEAR(ti.eVTV, -1.0 / 24, 1e-15);
}

TEST(Correctability, FourthOrderPredicates) {
  for (double t0 : {0.0, 0.05, 0.1, 1.0 / 6, 0.2}) {
    const auto e = rawErrorCoefficients(familyPoint(t0, correctableAlpha(t0)));
    EXPECT_TRUE(isCorrectableFourthOrder(e)) << t0;
    EXPECT_TRUE(isCorrectableFourthOrder(errorCoefficients(make4ACB(t0, correctableAlpha(t0)))));
  }
  EXPECT_FALSE(isCorrectableFourthOrder(errorCoefficients(make4ACB(1.0 / 6, 0.0))));
}

TEST(Correctability, ExtendedPrecisionAgrees) {
  PrecisionScope digits(50);
  const Extended t0 = Extended(1) / 6;
  const Extended a = correctableAlpha(t0);
  const auto [x, y] = fourthFamilyCoefficients(t0, a);
  EXPECT_LT(abs(x - y), Extended("1e-45"));
  EXPECT_NEAR(a.convert_to<double>(), correctableAlpha(1.0 / 6), 1e-14);
}
