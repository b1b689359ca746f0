#pragma once

#include <functional>
#include <string>

#include "fsi/core/phase_state.hpp"
#include "fsi/core/tensor.hpp"

namespace fsi {

/// Potential V(q) of a separable Hamiltonian H = p²/2 + V(q) together with the
/// derivative providers the integrators and bracket evaluators need.
///
/// `force` is F = -∇V and `forceGradient` is G = ∇|F|², the vector carried by
/// gradient kicks. Higher derivatives are optional; an empty provider means the
/// model does not supply that order.
template <RealNumber Real>
struct ForceModel {
  std::string name;
  int dim = 1;
  std::function<Real(const Vec<Real>&)> potential;
  std::function<Vec<Real>(const Vec<Real>&)> force;
  std::function<Vec<Real>(const Vec<Real>&)> forceGradient;
  std::function<Tensor<Real>(const Vec<Real>&)> hessian;
  std::function<Tensor<Real>(const Vec<Real>&)> thirdDerivative;
  std::function<Tensor<Real>(const Vec<Real>&)> fourthDerivative;

  [[nodiscard]] Real energy(const PhaseState<Real>& s) const {
    return dot(s.p, s.p) / 2 + potential(s.q);
  }
};

}  // namespace fsi
