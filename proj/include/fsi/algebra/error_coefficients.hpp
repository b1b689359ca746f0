#pragma once

// BCH error coefficients of symmetric drift-first splittings, evaluated through
// the seven-stage frame
//   [D t0, K(v1, α/2·u0), D t1, K(v2, (1−α)u0), D t1, K(v1, α/2·u0), D t0].
// Shorter schemes embed by zero stages; see familyFrame.

#include <cmath>
#include <utility>

#include "fsi/core/scheme.hpp"
#include "fsi/error.hpp"

namespace fsi {

template <RealNumber Real>
struct FamilyPoint {
  Real t0{0};
  Real t1{0};
  Real v1{0};
  Real v2{0};
  Real u0{0};
  Real alpha{0};
};

template <RealNumber Real>
struct ErrorCoefficientSet {
  Real eT{0};
  Real eV{0};
  Real eTTV{0};
  Real eVTV{0};
  Real eTTTTV{0};
  Real eVTTTV{0};
  Real eTTVTV{0};
  Real eVTVTV{0};
};

/// Closed-form polynomials in the frame weights; valid for any values.
template <RealNumber Real>
[[nodiscard]] ErrorCoefficientSet<Real> rawErrorCoefficients(const FamilyPoint<Real>& p) {
  const Real& t0 = p.t0;
  const Real& t1 = p.t1;
  const Real& v1 = p.v1;
  const Real& v2 = p.v2;
  const Real& u0 = p.u0;
  const Real& a = p.alpha;
  const Real sv = 2 * v1 + v2;
  const Real t0s = t0 * t0;
  const Real t1s = t1 * t1;
  const Real v1s = v1 * v1;
  const Real v2s = v2 * v2;

  ErrorCoefficientSet<Real> e;
  e.eT = 2 * (t0 + t1);
  e.eV = sv;
  e.eTTV = -(t1s * (-4 * v1 + v2) + t0s * sv + 2 * t0 * t1 * sv) / 6;
  e.eVTV = (6 * u0 - t0 * sv * sv + t1 * (2 * v1s + 2 * v1 * v2 - v2s)) / 6;
  e.eTTTTV = (7 * t0s * t0 * (t0 + 4 * t1) * sv + t1s * t1 * (4 * t0 + t1) * (7 * v2 - 16 * v1) +
              6 * t0s * t1s * (4 * v1 + 7 * v2)) /
             360;
  e.eVTTTV = (2 * t0s * (t0 + 3 * t1) * sv * sv - 6 * t0 * t1s * (6 * v1s + v1 * v2 - v2s) +
              t1s * t1 * (8 * v1s - 7 * v1 * v2 + 2 * v2s)) /
             90;
  e.eTTVTV = (t0s * t0 * sv * sv + t1s * (10 * (3 * a - 1) * u0 + t1 * (-16 * v1s + 4 * v1 * v2 + v2s)) +
              t0s * (-10 * u0 + t1 * (2 * v1s + 2 * v1 * v2 + 3 * v2s)) +
              t0 * t1 * (-20 * u0 + t1 * (12 * v1s + 2 * v1 * v2 + 3 * v2s))) /
             60;
  e.eVTVTV = (2 * t0s * sv * sv * sv - 4 * t0 * sv * (5 * u0 + t1 * (v1s + v1 * v2 - v2s)) +
              t1 * (10 * u0 * (2 * v1 + (3 * a - 2) * v2) -
                    t1 * (4 * v1s * v1 + v1s * v2 + 3 * v1 * v2s - 2 * v2s * v2))) /
             60;
  return e;
}

/// The fourth-order member of the frame at (t0, α).
template <RealNumber Real>
[[nodiscard]] FamilyPoint<Real> familyPoint(Real t0, Real alpha) {
  const Real w = 1 - 2 * t0;
  if (w == 0) {
    throw DomainError("family point: t0 = 1/2 is outside the domain");
  }
  FamilyPoint<Real> p;
  p.t0 = t0;
  p.t1 = Real(1) / 2 - t0;
  p.v1 = 1 / (6 * w * w);
  p.v2 = 1 - 2 * p.v1;
  p.u0 = (1 - 1 / w + 1 / (6 * w * w * w)) / 12;
  p.alpha = alpha;
  return p;
}

/// (eTTVTV, eVTVTV) of the fourth-order family in closed form.
template <RealNumber Real>
[[nodiscard]] std::pair<Real, Real> fourthFamilyCoefficients(Real t0, Real alpha) {
  const Real w = 1 - 2 * t0;
  if (w == 0) {
    throw DomainError("fourth-order family: t0 = 1/2 is outside the domain");
  }
  const Real& a = alpha;
  const Real ttvtv = (1 + 5 * a - 12 * t0 * (1 + 5 * a + 20 * a * t0 * (-1 + t0))) / (2880 * w);
  const Real inner = 1 - 40 * a + 20 * a * t0;
  const Real vtvtv =
      (1 + 10 * a -
       6 * t0 * (3 + 30 * a - t0 * (9 + 210 * a + 8 * t0 * (1 - 85 * a - 3 * t0 * inner)))) /
      (4320 * w * w * w * w);
  return {ttvtv, vtvtv};
}

inline constexpr double kPoleDenominatorTolerance = 1e-9;

/// Denominator of the correctable α(t0); its real roots are the poles of α.
template <RealNumber Real>
[[nodiscard]] Real correctableAlphaDenominator(Real t0) {
  const Real w = 1 - 2 * t0;
  return 5 * (1 - 12 * t0 * w * w) * (1 - 6 * t0 * (1 + 2 * t0 - 4 * t0 * t0));
}

/// α(t0) with eTTVTV = eVTVTV on the fourth-order family.
template <RealNumber Real>
[[nodiscard]] Real correctableAlpha(Real t0) {
  using std::abs;
  const Real den = correctableAlphaDenominator(t0);
  if (abs(den) < Real(kPoleDenominatorTolerance)) {
    throw PoleError("correctable alpha has a pole at t0 = " + formatReal(real_cast<double>(t0)));
  }
  const Real num = 1 + 6 * t0 * (-3 + 4 * t0 * (6 + t0 * (-23 + 24 * t0)));
  return num / den;
}

inline constexpr double kCorrectabilityTolerance = 1e-12;

template <RealNumber Real>
[[nodiscard]] bool isCorrectableSecondOrder(const ErrorCoefficientSet<Real>& e) {
  using std::abs;
  return abs(e.eTTV - e.eVTV) <= Real(kCorrectabilityTolerance);
}

template <RealNumber Real>
[[nodiscard]] bool isCorrectableFourthOrder(const ErrorCoefficientSet<Real>& e) {
  using std::abs;
  return abs(e.eTTVTV - e.eVTVTV) <= Real(kCorrectabilityTolerance);
}

/// Places a drift-first palindromic scheme of 3, 5 or 7 stages in the frame.
///   [D a, K(v,u), D a]                   → t0 = t1 = a/2, v1 = 0, v2 = v, u0 = u, α = 0
///   [D a, K(v,u), D b, K(v,u), D a]      → t0 = a, t1 = b/2, v1 = v, v2 = 0, u0 = 2u, α = 1
///   [D t0, K(v1,u1), D t1, K(v2,u2), …]  → u0 = 2u1 + u2, α = 2u1/u0 (0 when u0 = 0)
template <RealNumber Real>
[[nodiscard]] FamilyPoint<Real> familyFrame(const SplittingScheme<Real>& s) {
  const auto& st = s.stages;
  auto pattern = [&](std::size_t n) {
    if (st.size() != n) {
      return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (st[i].kind != (i % 2 == 0 ? StageKind::Drift : StageKind::Kick)) {
        return false;
      }
    }
    return true;
  };
  FamilyPoint<Real> p;
  if (pattern(3)) {
    p.t0 = st[0].weight / 2;
    p.t1 = st[0].weight / 2;
    p.v1 = Real(0);
    p.v2 = st[1].weight;
    p.u0 = st[1].gradWeight;
    p.alpha = Real(0);
  } else if (pattern(5)) {
    p.t0 = st[0].weight;
    p.t1 = st[2].weight / 2;
    p.v1 = st[1].weight;
    p.v2 = Real(0);
    p.u0 = 2 * st[1].gradWeight;
    p.alpha = Real(1);
  } else if (pattern(7)) {
    p.t0 = st[0].weight;
    p.t1 = st[2].weight;
    p.v1 = st[1].weight;
    p.v2 = st[3].weight;
    p.u0 = 2 * st[1].gradWeight + st[3].gradWeight;
    if (p.u0 == 0 && st[1].gradWeight != 0) {
      throw CapabilityError("scheme '" + s.name +
                            "': gradient weights cancel (u0 = 0) with a nonzero outer share");
    }
    p.alpha = p.u0 == 0 ? Real(0) : 2 * st[1].gradWeight / p.u0;
  } else {
    throw CapabilityError("error coefficients are available only for drift-first palindromic "
                          "schemes of 3, 5 or 7 stages; '" + s.name + "' has another layout");
  }
  return p;
}

template <RealNumber Real>
[[nodiscard]] ErrorCoefficientSet<Real> errorCoefficients(const SplittingScheme<Real>& s) {
  validateScheme(s);
  return rawErrorCoefficients(familyFrame(s));
}

}  // namespace fsi
