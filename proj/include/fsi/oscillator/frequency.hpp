#pragma once

#include <cmath>
#include <optional>
#include <type_traits>

#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/numerics/series.hpp"
#include "fsi/oscillator/step_matrix.hpp"

namespace fsi {

/// ω_A(ε) = arccos(trace/2)/ε of the one-step matrix.
template <RealNumber Real>
[[nodiscard]] Real approxFrequency(const SplittingScheme<Real>& scheme, Real omega, Real eps) {
  using std::abs;
  using std::acos;
  if (eps == 0) {
    return omega;
  }
  const Real h = stepMatrix(scheme, omega, eps).halfTrace();
  if (abs(h) > 1) {
    throw InstabilityError("oscillator step beyond the stability limit: |trace|/2 = " +
                           formatReal(real_cast<double>(abs(h))));
  }
  return acos(h) / eps;
}

struct LadderOptions {
  double eps0 = 1e-2;  // in units of 1/ω
  double ratio = 0.5;
  int depth = 8;
};

/// ω_A/ω = 1 + c2(ωε)² + c4(ωε)⁴ + c6(ωε)⁶ + …
template <RealNumber Real>
struct FrequencyReport {
  Real omega{1};
  Real c2{0};
  Real c4{0};
  Real c6{0};
  Real c2Error{0};
  Real c4Error{0};
  Real c6Error{0};
  std::optional<Real> evalEps;
  std::optional<Real> omegaA;               // at evalEps
  std::optional<Real> phaseErrorPerPeriod;  // 2π(ω_A/ω − 1) at evalEps
};

/// Default zero floor for exactly vanishing coefficients: a third of the
/// working digits.
template <RealNumber Real>
[[nodiscard]] Real defaultNoiseFloor() {
  using std::pow;
  if constexpr (std::same_as<Real, Extended>) {
    return pow(Real(10), -static_cast<int>(Extended::default_precision()) / 3);
  } else {
    return Real(1e-6);
  }
}

template <RealNumber Real>
[[nodiscard]] FrequencyReport<Real> frequencySeries(const SplittingScheme<Real>& scheme, Real omega,
                                                    int maxOrder = 6,
                                                    std::optional<std::type_identity_t<Real>> evalEps = {},
                                                    const LadderOptions& opt = {}) {
  if (maxOrder != 2 && maxOrder != 4 && maxOrder != 6) {
    throw ValidationError("frequency series: maxOrder must be 2, 4 or 6");
  }
  if (opt.depth < 6) {
    throw ValidationError("frequency series: ladder depth must be at least 6");
  }
  std::vector<Real> x;
  std::vector<Real> y;
  Real eps = Real(opt.eps0) / omega;
  const Real ratio(opt.ratio);
  for (int j = 0; j < opt.depth; ++j) {
    const Real we = omega * eps;
    x.push_back(we * we);
    y.push_back(approxFrequency(scheme, omega, eps) / omega - 1);
    eps *= ratio;
  }
  requireConverged(x, y, static_cast<std::size_t>(maxOrder / 2), defaultNoiseFloor<Real>(),
                   "frequency series");
  const auto fit = fitPowerSeries(x, y);
  FrequencyReport<Real> r;
  r.omega = omega;
  r.c2 = fit.coefficients[0];
  r.c4 = fit.coefficients[1];
  r.c6 = fit.coefficients[2];
  r.c2Error = fit.errors[0];
  r.c4Error = fit.errors[1];
  r.c6Error = fit.errors[2];
  if (evalEps) {
    r.evalEps = evalEps;
    r.omegaA = approxFrequency(scheme, omega, *evalEps);
    r.phaseErrorPerPeriod = 2 * pi<Real>() * (*r.omegaA / omega - 1);
  }
  return r;
}

/// c2 and c4 from the error coefficients (unit-free, multiply (ωε)² and (ωε)⁴).
template <RealNumber Real>
[[nodiscard]] Real predictedC2(const ErrorCoefficientSet<Real>& e) {
  return e.eTTV - e.eVTV;
}

template <RealNumber Real>
[[nodiscard]] Real predictedC4(const ErrorCoefficientSet<Real>& e) {
  const Real d = e.eTTV - e.eVTV;
  return 2 * (e.eVTVTV - e.eTTVTV - e.eTTV * e.eVTV) - d * d / 2;
}

template <RealNumber Real>
struct EffectiveOscillator {
  Real mStar{1};
  Real kStar{1};

  [[nodiscard]] Real omegaA() const {
    using std::sqrt;
    return sqrt(kStar / mStar);
  }
};

/// m* = (1 + 2ε²ω²eTTV − 4ε⁴ω⁴eTTVTV)⁻¹, k* = ω²(1 − 2ε²ω²eVTV + 4ε⁴ω⁴eVTVTV).
template <RealNumber Real>
[[nodiscard]] EffectiveOscillator<Real> effectiveParams(const ErrorCoefficientSet<Real>& e,
                                                        Real omega, Real eps) {
  const Real x = eps * eps * omega * omega;
  EffectiveOscillator<Real> o;
  o.mStar = 1 / (1 + 2 * x * e.eTTV - 4 * x * x * e.eTTVTV);
  o.kStar = omega * omega * (1 - 2 * x * e.eVTV + 4 * x * x * e.eVTVTV);
  return o;
}

}  // namespace fsi
