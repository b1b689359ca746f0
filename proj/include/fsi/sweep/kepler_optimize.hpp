#pragma once

#include <cmath>
#include <string>

#include "fsi/kepler/diagnostics.hpp"
#include "fsi/numerics/optimize.hpp"

namespace fsi {

struct KeplerOptimizeOptions {
  std::size_t searchN = 3000;
  std::size_t finalN = 5000;
  double tol = 1e-5;
};

struct KeplerOptimum {
  double t0Star = 0;
  double theta4 = 0;     // θ₄(T) at finalN, signed
  double objective = 0;  // |θ₄(T)|
  double bracketWidth = 0;
};

/// θ₄(T) of 4ACB(t0, alpha) at step count n; failures name the t0 at fault.
[[nodiscard]] inline double keplerPrecession(double t0, double alpha,
                                             const KeplerOrbitSpec<double>& spec, std::size_t n) {
  try {
    return limitCurve(make4ACB(t0, alpha), spec, {n, n}).theta4AtPeriod;
  } catch (const SingularityError& e) {
    throw SingularityError("t0 = " + formatReal(t0) + ": " + e.detail(), e.stage(), e.step());
  } catch (const Error& e) {
    throw Error("t0 = " + formatReal(t0) + ": " + e.what());
  }
}

/// Golden-section minimum of |θ₄(T)| over t0 at fixed alpha.
[[nodiscard]] inline KeplerOptimum optimizeKepler(double a, double b, double alpha,
                                                  const KeplerOrbitSpec<double>& spec,
                                                  const KeplerOptimizeOptions& opt = {}) {
  const auto m = goldenSectionMinimize(
      [&](double t0) { return std::abs(keplerPrecession(t0, alpha, spec, opt.searchN)); }, a, b,
      opt.tol);
  KeplerOptimum r;
  r.t0Star = m.x;
  r.bracketWidth = m.bracketWidth;
  r.theta4 = keplerPrecession(m.x, alpha, spec, opt.finalN);
  r.objective = std::abs(r.theta4);
  return r;
}

}  // namespace fsi
