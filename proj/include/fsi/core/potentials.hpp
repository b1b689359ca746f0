#pragma once

#include "fsi/brackets/kepler_derivatives.hpp"
#include "fsi/core/force_model.hpp"

namespace fsi {

/// V = ω²|q|²/2. F = −ω²q, G = ∇|F|² = 2ω⁴q; third and fourth derivatives vanish.
template <RealNumber Real>
[[nodiscard]] ForceModel<Real> harmonicForce(Real omega, int dim = 1) {
  if (dim < 1 || dim > 2) {
    throw ValidationError("harmonic force: dimension must be 1 or 2");
  }
  const Real w2 = omega * omega;
  ForceModel<Real> m;
  m.name = "harmonic";
  m.dim = dim;
  m.potential = [w2](const Vec<Real>& q) { return w2 * dot(q, q) / 2; };
  m.force = [w2](const Vec<Real>& q) {
    Vec<Real> f(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      f[i] = -w2 * q[i];
    }
    return f;
  };
  m.forceGradient = [w2](const Vec<Real>& q) {
    Vec<Real> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      g[i] = 2 * w2 * w2 * q[i];
    }
    return g;
  };
  m.hessian = [w2, dim](const Vec<Real>&) {
    Tensor<Real> h(dim, 2);
    for (int i = 0; i < dim; ++i) {
      h(i, i) = w2;
    }
    return h;
  };
  m.thirdDerivative = [dim](const Vec<Real>&) { return Tensor<Real>(dim, 3); };
  m.fourthDerivative = [dim](const Vec<Real>&) { return Tensor<Real>(dim, 4); };
  return m;
}

/// V = −1/|q| in the plane. G = ∇|q|⁻⁴ = −4q/r⁶.
template <RealNumber Real>
[[nodiscard]] ForceModel<Real> keplerForce() {
  ForceModel<Real> m;
  m.name = "kepler";
  m.dim = 2;
  m.potential = [](const Vec<Real>& q) { return keplerPotential(q); };
  m.force = [](const Vec<Real>& q) {
    Vec<Real> f = keplerGradient(q);
    for (auto& x : f) {
      x = -x;
    }
    return f;
  };
  m.forceGradient = [](const Vec<Real>& q) {
    const Real r2 = dot(q, q);
    if (!(r2 > 0)) {
      throw SingularityError("Kepler force gradient is singular at |q| = 0");
    }
    const Real r6 = r2 * r2 * r2;
    Vec<Real> g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      g[i] = -4 * q[i] / r6;
    }
    return g;
  };
  m.hessian = [](const Vec<Real>& q) { return keplerHessian(q); };
  m.thirdDerivative = [](const Vec<Real>& q) { return keplerThirdDerivatives(q); };
  m.fourthDerivative = [](const Vec<Real>& q) { return keplerFourthDerivatives(q); };
  return m;
}

}  // namespace fsi
