#pragma once

// Analytic derivatives of the Kepler potential V(q) = -1/|q| in two dimensions.

#include <cmath>

#include "fsi/core/phase_state.hpp"
#include "fsi/core/tensor.hpp"
#include "fsi/error.hpp"

namespace fsi {

namespace detail {

template <RealNumber Real>
Real keplerRadius(const Vec<Real>& q) {
  using std::sqrt;
  const Real r2 = dot(q, q);
  if (!(r2 > 0) || !isFinite(r2)) {
    throw SingularityError("Kepler potential is singular at |q| = 0");
  }
  return sqrt(r2);
}

inline int delta(int i, int j) { return i == j ? 1 : 0; }

}  // namespace detail

template <RealNumber Real>
[[nodiscard]] Real keplerPotential(const Vec<Real>& q) {
  return Real(-1) / detail::keplerRadius(q);
}

/// V_i = q_i / r³.
template <RealNumber Real>
[[nodiscard]] Vec<Real> keplerGradient(const Vec<Real>& q) {
  const Real r = detail::keplerRadius(q);
  const Real r3 = r * r * r;
  Vec<Real> g(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    g[i] = q[i] / r3;
  }
  return g;
}

/// V_ij = δ_ij / r³ − 3 q_i q_j / r⁵.
template <RealNumber Real>
[[nodiscard]] Tensor<Real> keplerHessian(const Vec<Real>& q) {
  const int d = static_cast<int>(q.size());
  const Real r = detail::keplerRadius(q);
  const Real r2 = r * r;
  const Real r3 = r2 * r;
  const Real r5 = r3 * r2;
  Tensor<Real> h(d, 2);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      h(i, j) = Real(detail::delta(i, j)) / r3 - 3 * q[i] * q[j] / r5;
    }
  }
  return h;
}

/// V_ijk = −3(δ_ij q_k + δ_ik q_j + δ_jk q_i)/r⁵ + 15 q_i q_j q_k / r⁷.
template <RealNumber Real>
[[nodiscard]] Tensor<Real> keplerThirdDerivatives(const Vec<Real>& q) {
  const int d = static_cast<int>(q.size());
  const Real r = detail::keplerRadius(q);
  const Real r2 = r * r;
  const Real r5 = r2 * r2 * r;
  const Real r7 = r5 * r2;
  Tensor<Real> t(d, 3);
  using detail::delta;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        const Real pairs = delta(i, j) * q[k] + delta(i, k) * q[j] + delta(j, k) * q[i];
        t(i, j, k) = -3 * pairs / r5 + 15 * q[i] * q[j] * q[k] / r7;
      }
    }
  }
  return t;
}

/// V_ijkl = −3(δδ)₃/r⁵ + 15(δ qq)₆/r⁷ − 105 q_i q_j q_k q_l / r⁹.
template <RealNumber Real>
[[nodiscard]] Tensor<Real> keplerFourthDerivatives(const Vec<Real>& q) {
  const int d = static_cast<int>(q.size());
  const Real r = detail::keplerRadius(q);
  const Real r2 = r * r;
  const Real r5 = r2 * r2 * r;
  const Real r7 = r5 * r2;
  const Real r9 = r7 * r2;
  Tensor<Real> t(d, 4);
  using detail::delta;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          const int dd = delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) +
                         delta(i, l) * delta(j, k);
          const Real dqq = delta(i, j) * q[k] * q[l] + delta(i, k) * q[j] * q[l] +
                           delta(i, l) * q[j] * q[k] + delta(j, k) * q[i] * q[l] +
                           delta(j, l) * q[i] * q[k] + delta(k, l) * q[i] * q[j];
          t(i, j, k, l) = Real(-3 * dd) / r5 + 15 * dqq / r7 - 105 * q[i] * q[j] * q[k] * q[l] / r9;
        }
      }
    }
  }
  return t;
}

}  // namespace fsi
