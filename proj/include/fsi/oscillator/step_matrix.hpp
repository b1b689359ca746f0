#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

#include "fsi/core/scheme.hpp"
#include "fsi/error.hpp"

namespace fsi {

/// One-step map of a scheme on H = p²/2 + ω²q²/2, acting on (q, p).
template <RealNumber Real>
struct StepMatrix {
  Real m11{1};
  Real m12{0};
  Real m21{0};
  Real m22{1};
  Real omega{1};

  [[nodiscard]] Real det() const { return m11 * m22 - m12 * m21; }
  [[nodiscard]] Real halfTrace() const { return (m11 + m22) / 2; }

  /// (this ∘ rhs): apply rhs first.
  [[nodiscard]] StepMatrix operator*(const StepMatrix& r) const {
    return {m11 * r.m11 + m12 * r.m21, m11 * r.m12 + m12 * r.m22, m21 * r.m11 + m22 * r.m21,
            m21 * r.m12 + m22 * r.m22, omega};
  }

  [[nodiscard]] std::pair<Real, Real> apply(const Real& q, const Real& p) const {
    return {m11 * q + m12 * p, m21 * q + m22 * p};
  }
};

template <RealNumber Real>
[[nodiscard]] StepMatrix<Real> stepMatrix(const SplittingScheme<Real>& scheme, Real omega, Real eps) {
  if (eps < 0) {
    throw DomainError("step matrix: eps must be non-negative");
  }
  const Real w2 = omega * omega;
  const Real w4 = w2 * w2;
  const Real eps3 = eps * eps * eps;
  StepMatrix<Real> m;
  m.omega = omega;
  for (const auto& st : scheme.stages) {
    if (st.kind == StageKind::Drift) {
      // [[1, εc], [0, 1]] · m
      const Real c = eps * st.weight;
      m.m11 += c * m.m21;
      m.m12 += c * m.m22;
    } else {
      // [[1, 0], [k, 1]] · m with k = −εvω² + 2ε³uω⁴
      const Real k = -eps * st.weight * w2 + 2 * eps3 * st.gradWeight * w4;
      m.m21 += k * m.m11;
      m.m22 += k * m.m12;
    }
  }
  return m;
}

/// Exact rotation of the oscillator over time t.
template <RealNumber Real>
[[nodiscard]] StepMatrix<Real> exactFlowMatrix(Real omega, Real t) {
  using std::cos;
  using std::sin;
  const Real c = cos(omega * t);
  const Real s = sin(omega * t);
  return {c, s / omega, -omega * s, c, omega};
}

/// M^n by repeated squaring. Algebraically the same map as n applications.
template <RealNumber Real>
[[nodiscard]] StepMatrix<Real> matrixPower(StepMatrix<Real> m, std::size_t n) {
  StepMatrix<Real> result;
  result.omega = m.omega;
  while (n > 0) {
    if (n & 1u) {
      result = result * m;
    }
    n >>= 1u;
    if (n > 0) {
      m = m * m;
    }
  }
  return result;
}

}  // namespace fsi
