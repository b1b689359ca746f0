#pragma once

// Bound Kepler orbits of H = p²/2 − 1/|q| in the plane, started at q = (10, 0)
// with p = (0, p_y).

#include <array>
#include <cmath>
#include <optional>

#include "fsi/core/phase_state.hpp"

namespace fsi {

template <RealNumber Real>
struct KeplerOrbitSpec {
  std::array<Real, 2> q0{Real(10), Real(0)};
  std::array<Real, 2> p0{Real(0), Real(0)};
  Real E0{0};
  Real a{0};  // semi-major axis
  Real T{0};  // period
  Real e{0};  // eccentricity, |A| at the start

  [[nodiscard]] PhaseState<Real> initialState() const {
    return PhaseState<Real>{{q0[0], q0[1]}, {p0[0], p0[1]}, Real(0)};
  }
  [[nodiscard]] Real perihelion() const { return a * (1 - e); }
};

/// L_z = q × p.
template <RealNumber Real>
[[nodiscard]] Real angularMomentum(const PhaseState<Real>& s) {
  return s.q[0] * s.p[1] - s.q[1] * s.p[0];
}

/// Laplace–Runge–Lenz vector A = p × L − q̂ with L = q × p along z.
template <RealNumber Real>
[[nodiscard]] std::array<Real, 2> lrlVector(const PhaseState<Real>& s) {
  using std::sqrt;
  if (s.q.size() != 2) {
    throw ValidationError("LRL vector: state must be two-dimensional");
  }
  const Real r = sqrt(s.q[0] * s.q[0] + s.q[1] * s.q[1]);
  if (r == 0) {
    throw SingularityError("LRL vector at |q| = 0");
  }
  const Real L = angularMomentum(s);
  return {s.p[1] * L - s.q[0] / r, -s.p[0] * L - s.q[1] / r};
}

/// Raw atan2 angle of A, in (−π, π].
template <RealNumber Real>
[[nodiscard]] Real lrlAngle(const PhaseState<Real>& s) {
  using std::atan2;
  using std::sqrt;
  const auto A = lrlVector(s);
  if (sqrt(A[0] * A[0] + A[1] * A[1]) < Real(1e-12)) {
    throw DegenerateError("LRL angle undefined: |A| is zero (circular orbit)");
  }
  return atan2(A[1], A[0]);
}

/// Continuous angle: each sample picks the branch nearest the previous one.
template <RealNumber Real>
class AngleUnwrapper {
 public:
  Real operator()(Real raw) {
    using std::round;
    if (prev_) {
      const Real twoPi = 2 * pi<Real>();
      raw -= twoPi * round((raw - *prev_) / twoPi);
    }
    prev_ = raw;
    return raw;
  }

 private:
  std::optional<Real> prev_;
};

/// Orbit through an arbitrary phase point; E0, a, T and e follow from it.
template <RealNumber Real>
[[nodiscard]] KeplerOrbitSpec<Real> orbitFromState(std::array<Real, 2> q, std::array<Real, 2> p) {
  using std::pow;
  using std::sqrt;
  KeplerOrbitSpec<Real> o;
  o.q0 = q;
  o.p0 = p;
  const Real r = sqrt(q[0] * q[0] + q[1] * q[1]);
  if (r == 0) {
    throw SingularityError("Kepler orbit: start at |q| = 0");
  }
  o.E0 = (p[0] * p[0] + p[1] * p[1]) / 2 - 1 / r;
  if (!(o.E0 < 0)) {
    throw DomainError("Kepler orbit: unbound, E0 = " + formatReal(real_cast<double>(o.E0)));
  }
  o.a = -1 / (2 * o.E0);
  o.T = 2 * pi<Real>() * pow(o.a, Real(3) / 2);
  const auto A = lrlVector(o.initialState());
  o.e = sqrt(A[0] * A[0] + A[1] * A[1]);
  return o;
}

/// q0 = (10, 0), p0 = (0, p_y) with 0 < p_y < sqrt(0.2).
template <RealNumber Real>
[[nodiscard]] KeplerOrbitSpec<Real> orbitFromPy(Real py) {
  if (!isFinite(py) || !(py > 0)) {
    throw DomainError("Kepler orbit: p_y must be positive, got " + formatReal(real_cast<double>(py)));
  }
  return orbitFromState<Real>({Real(10), Real(0)}, {Real(0), py});
}

/// p_y = sqrt((1 − e)/10), since e = |1 − 10 p_y²| on this family.
template <RealNumber Real>
[[nodiscard]] KeplerOrbitSpec<Real> orbitFromEccentricity(Real e) {
  using std::sqrt;
  if (!isFinite(e) || e < 0 || !(e < 1)) {
    throw DomainError("Kepler orbit: eccentricity must lie in [0, 1), got " +
                      formatReal(real_cast<double>(e)));
  }
  return orbitFromPy<Real>(sqrt((1 - e) / 10));
}

}  // namespace fsi
