#pragma once

// ε⁴-scaled limit functions along one Kepler period:
//   H₄(t) = [E(t) − E₀] / (ε⁴E₀),   θ₄(t) = [θ(t) − θ(0)] / ε⁴,
// with θ the unwrapped angle of the LRL vector.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fsi/core/potentials.hpp"
#include "fsi/core/stepper.hpp"
#include "fsi/kepler/orbit.hpp"
#include "fsi/numerics/parallel.hpp"

namespace fsi {

enum class DiagnosticsKind { Energy, Angle };

template <RealNumber Real>
struct DiagnosticsSeries {
  std::size_t n = 0;
  Real eps{0};
  std::vector<Real> times;
  std::vector<Real> h4;
  std::vector<Real> theta;  // θ(t) − θ(0), radians
  std::vector<Real> theta4;
  Real h4AtPeriod{0};
  Real theta4AtPeriod{0};
};

template <RealNumber Real>
[[nodiscard]] Real keplerEnergy(const PhaseState<Real>& s) {
  using std::sqrt;
  return (s.p[0] * s.p[0] + s.p[1] * s.p[1]) / 2 - 1 / sqrt(s.q[0] * s.q[0] + s.q[1] * s.q[1]);
}

struct LimitCurveOptions {
  std::size_t n = 5000;
  std::size_t sampleEvery = 1;
};

/// One period at ε = T/N with any propagator. Samples include t = 0 and t = T.
template <RealNumber Real, Propagator<Real> P>
[[nodiscard]] DiagnosticsSeries<Real> limitCurve(const P& prop, const KeplerOrbitSpec<Real>& spec,
                                                 const LimitCurveOptions& opt = {}) {
  if (opt.n < 1 || opt.sampleEvery < 1) {
    throw ValidationError("limit curve: N and the sampling stride must be positive");
  }
  DiagnosticsSeries<Real> r;
  r.n = opt.n;
  r.eps = spec.T / Real(opt.n);
  const Real eps4 = r.eps * r.eps * r.eps * r.eps;
  auto s = spec.initialState();
  const Real e0 = keplerEnergy(s);
  AngleUnwrapper<Real> unwrap;
  const Real theta0 = unwrap(lrlAngle(s));

  auto sample = [&](std::size_t k) {
    const Real th = unwrap(lrlAngle(s)) - theta0;
    const Real dh = keplerEnergy(s) - e0;
    r.times.push_back(r.eps * Real(k));
    r.h4.push_back(dh / (eps4 * e0));
    r.theta.push_back(th);
    r.theta4.push_back(th / eps4);
  };
  sample(0);
  for (std::size_t k = 1; k <= opt.n; ++k) {
    try {
      s = prop.step(std::move(s), r.eps);
    } catch (const SingularityError& e) {
      throw e.atStep(k);
    }
    if (k % opt.sampleEvery == 0 || k == opt.n) {
      sample(k);
    } else {
      // Unwrap every step so a fast perihelion passage never skips a branch.
      (void)unwrap(lrlAngle(s));
    }
  }
  r.h4AtPeriod = r.h4.back();
  r.theta4AtPeriod = r.theta4.back();
  return r;
}

template <RealNumber Real>
[[nodiscard]] DiagnosticsSeries<Real> limitCurve(const SplittingScheme<Real>& scheme,
                                                 const KeplerOrbitSpec<Real>& spec,
                                                 const LimitCurveOptions& opt = {}) {
  const auto force = keplerForce<Real>();
  return limitCurve(SchemePropagator<Real>{&scheme, &force}, spec, opt);
}

struct PrecessionOptions {
  std::size_t n = 5000;
  std::size_t checkN = 3000;
  double tolerance = 0.02;  // relative gap between the two N
};

template <RealNumber Real>
struct PrecessionResult {
  Real value{0};       // θ₄(T) at opt.n
  Real checkValue{0};  // θ₄(T) at opt.checkN
  Real relativeGap{0};
  std::optional<std::string> warning;
};

template <RealNumber Real>
[[nodiscard]] PrecessionResult<Real> precessionAfterPeriod(const SplittingScheme<Real>& scheme,
                                                           const KeplerOrbitSpec<Real>& spec,
                                                           const PrecessionOptions& opt = {}) {
  using std::abs;
  const std::size_t every = opt.n;  // only the endpoint is needed
  PrecessionResult<Real> r;
  r.value = limitCurve(scheme, spec, {opt.n, every}).theta4AtPeriod;
  if (opt.checkN > 0) {
    r.checkValue = limitCurve(scheme, spec, {opt.checkN, opt.checkN}).theta4AtPeriod;
    const Real scale = abs(r.value);
    r.relativeGap = scale > 0 ? abs(r.value - r.checkValue) / scale : abs(r.checkValue);
    if (r.relativeGap > Real(opt.tolerance)) {
      r.warning = "theta4(T) not converged: N = " + std::to_string(opt.n) + " gives " +
                  formatReal(real_cast<double>(r.value)) + ", N = " + std::to_string(opt.checkN) +
                  " gives " + formatReal(real_cast<double>(r.checkValue));
    }
  } else {
    r.checkValue = r.value;
  }
  return r;
}

enum class RowStatus { Ok, Degenerate, Failed };

[[nodiscard]] inline const char* toString(RowStatus s) {
  switch (s) {
    case RowStatus::Ok:
      return "ok";
    case RowStatus::Degenerate:
      return "degenerate";
    case RowStatus::Failed:
      return "failed";
  }
  return "?";
}

template <RealNumber Real>
struct EccentricityRow {
  Real e{0};
  Real py{0};
  Real perihelion{0};
  std::optional<PrecessionResult<Real>> precession;
  RowStatus status = RowStatus::Ok;
  std::string message;
};

/// One row per eccentricity, in input order; a failing row does not stop the
/// sweep. threads = 0 uses all cores.
template <RealNumber Real>
[[nodiscard]] std::vector<EccentricityRow<Real>> eccentricitySweep(
    const SplittingScheme<Real>& scheme, const std::vector<Real>& eList,
    const PrecessionOptions& opt = {}, unsigned threads = 1) {
  std::vector<EccentricityRow<Real>> rows(eList.size());
  parallelFor(eList.size(), threads, [&](std::size_t i) {
    auto& row = rows[i];
    row.e = eList[i];
    try {
      const auto spec = orbitFromEccentricity(eList[i]);
      row.py = spec.p0[1];
      row.perihelion = spec.perihelion();
      row.precession = precessionAfterPeriod(scheme, spec, opt);
      if (row.precession->warning) {
        row.message = *row.precession->warning;
      }
    } catch (const DegenerateError& e) {
      row.status = RowStatus::Degenerate;
      row.message = e.what();
    } catch (const Error& e) {
      row.status = RowStatus::Failed;
      row.message = e.what();
    }
  });
  return rows;
}

template <RealNumber Real>
struct EnergyExponentReport {
  std::vector<std::size_t> n;
  std::vector<Real> deltaE;  // E(T) − E0
  double slope = 0;          // least-squares d log|ΔE_T| / d log ε
};

/// Raw one-period energy deviation on a ladder of N and its fitted exponent.
template <RealNumber Real>
[[nodiscard]] EnergyExponentReport<Real> keplerEnergyExponent(
    const SplittingScheme<Real>& scheme, const KeplerOrbitSpec<Real>& spec,
    const std::vector<std::size_t>& ladder = {2000, 4000, 8000}) {
  using std::abs;
  if (ladder.size() < 2) {
    throw ValidationError("energy exponent: need at least two step counts");
  }
  EnergyExponentReport<Real> r;
  const auto force = keplerForce<Real>();
  const auto s0 = spec.initialState();
  const Real e0 = keplerEnergy(s0);
  std::vector<double> lx;
  std::vector<double> ly;
  for (const std::size_t n : ladder) {
    const Real eps = spec.T / Real(n);
    const auto path = integrate(scheme, force, s0, eps, n, n);
    const Real d = keplerEnergy(path.back()) - e0;
    r.n.push_back(n);
    r.deltaE.push_back(d);
    lx.push_back(std::log(real_cast<double>(eps)));
    ly.push_back(std::log(std::max(real_cast<double>(abs(d)), 1e-300)));
  }
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  r.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return r;
}

}  // namespace fsi
