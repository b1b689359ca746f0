#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/oscillator/frequency.hpp"

namespace fsi {

/// H(q_T, p_T) − H(q0, p0) after the total map `m` (e.g. M^N).
template <RealNumber Real>
[[nodiscard]] Real energyChange(const StepMatrix<Real>& m, Real q0, Real p0) {
  const Real w2 = m.omega * m.omega;
  const auto [q, p] = m.apply(q0, p0);
  return (p * p + w2 * q * q - p0 * p0 - w2 * q0 * q0) / 2;
}

/// One-period energy deviation ΔE_T at ε = T/N, T = 2π/ω.
template <RealNumber Real>
[[nodiscard]] Real onePeriodEnergyError(const SplittingScheme<Real>& scheme, Real omega, Real q0,
                                        Real p0, std::size_t n) {
  using std::abs;
  if (n < 4) {
    throw ValidationError("one-period energy error: N must be at least 4");
  }
  const Real eps = 2 * pi<Real>() / (omega * Real(n));
  const auto m = stepMatrix(scheme, omega, eps);
  if (abs(m.halfTrace()) > 1) {
    throw InstabilityError("one-period energy error: step beyond the stability limit");
  }
  return energyChange(matrixPower(m, n), q0, p0);
}

template <RealNumber Real>
struct EnergyErrorReport {
  // coefficients[k] multiplies ε^(2k+2): E2, E4, …, E_{2·depth}.
  std::vector<Real> coefficients;
  std::vector<Real> errors;
  std::vector<std::size_t> ladderN;
  std::vector<Real> deltaE;
  std::optional<int> leadingExponent;  // none: all fitted terms vanish
  double measuredSlope = 0;            // d log|ΔE| / d log ε over the two finest rungs

  [[nodiscard]] Real E(int order) const {
    const auto k = static_cast<std::size_t>(order / 2 - 1);
    return k < coefficients.size() ? coefficients[k] : Real(0);
  }
};

struct EnergyLadderOptions {
  std::size_t n0 = 629;  // ε0 = T/629 ≈ 10⁻²/ω
  int depth = 8;         // N doubles per rung
};

template <RealNumber Real>
[[nodiscard]] EnergyErrorReport<Real> energyErrorSeries(const SplittingScheme<Real>& scheme,
                                                        Real omega, Real q0, Real p0,
                                                        const EnergyLadderOptions& opt = {}) {
  using std::abs;
  using std::log;
  if (opt.depth < 4) {
    throw ValidationError("energy series: ladder depth must be at least 4");
  }
  EnergyErrorReport<Real> r;
  std::vector<Real> x;
  std::size_t n = opt.n0;
  for (int j = 0; j < opt.depth; ++j) {
    const Real eps = 2 * pi<Real>() / (omega * Real(n));
    x.push_back(eps * eps);
    r.ladderN.push_back(n);
    r.deltaE.push_back(onePeriodEnergyError(scheme, omega, q0, p0, n));
    n *= 2;
  }
  const auto fit = fitPowerSeries(x, r.deltaE);
  r.coefficients = fit.coefficients;
  r.errors = fit.errors;

  // A coefficient is significant when it clears both its own error estimate
  // and the precision floor, scaled by the energy.
  const Real h0 = (p0 * p0 + omega * omega * q0 * q0) / 2;
  const Real floor = defaultNoiseFloor<Real>() * (h0 > 0 ? h0 : Real(1));
  for (std::size_t k = 0; k + 1 < r.coefficients.size(); ++k) {
    if (abs(r.coefficients[k]) > floor && abs(r.coefficients[k]) > 100 * r.errors[k]) {
      r.leadingExponent = static_cast<int>(2 * k + 2);
      break;
    }
  }
  const std::size_t d = r.deltaE.size();
  const Real a = abs(r.deltaE[d - 2]);
  const Real b = abs(r.deltaE[d - 1]);
  if (a > 0 && b > 0) {
    r.measuredSlope = real_cast<double>(log(a / b)) / std::log(2.0);
  }
  return r;
}

/// ΔE_T⁽⁴⁾ = 4πω⁵p0q0(eTTV − eVTV)(eTTV + eVTV).
template <RealNumber Real>
[[nodiscard]] Real predictedE4(const ErrorCoefficientSet<Real>& e, Real omega, Real q0, Real p0) {
  const Real w5 = omega * omega * omega * omega * omega;
  return 4 * pi<Real>() * w5 * p0 * q0 * (e.eTTV - e.eVTV) * (e.eTTV + e.eVTV);
}

/// General ΔE_T⁽⁶⁾ expression for second-order schemes as published. It reduces
/// to πω⁷p0q0/2160 at α = 1/24; elsewhere it is reported, not relied upon.
template <RealNumber Real>
[[nodiscard]] Real predictedE6(const ErrorCoefficientSet<Real>& e, Real omega, Real q0, Real p0) {
  const Real P = pi<Real>();
  const Real w = omega;
  const Real w6 = w * w * w * w * w * w;
  const Real s = e.eTTV + e.eVTV;
  const Real d = e.eTTV - e.eVTV;
  return 2 * P * w6 * (2 * P * (p0 * p0 - w * w * q0 * q0) - p0 * q0 * w) * s * d * d -
         4 * P * p0 * q0 * w6 * w * s *
             (2 * (e.eTTVTV - e.eVTVTV) + e.eTTV * e.eTTV + e.eVTV * e.eVTV);
}

/// ΔE_T⁽⁸⁾ = 16πω⁹(eTTVTV² − eVTVTV²)q0p0 for fourth-order schemes.
template <RealNumber Real>
[[nodiscard]] Real predictedE8(const ErrorCoefficientSet<Real>& e, Real omega, Real q0, Real p0) {
  Real w9 = omega;
  for (int i = 0; i < 8; ++i) {
    w9 *= omega;
  }
  return 16 * pi<Real>() * w9 * (e.eTTVTV * e.eTTVTV - e.eVTVTV * e.eVTVTV) * q0 * p0;
}

}  // namespace fsi
