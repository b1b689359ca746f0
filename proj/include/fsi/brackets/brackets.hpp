#pragma once

// Nested Poisson brackets of T = p²/2 and V(q) at a phase point, by tensor
// contraction:
//   {T,V}      = −p_i V_i
//   {T²V}      =  p_i V_ij p_j
//   {VTV}      = −V_i V_i
//   {TT³V}     =  p_i p_j p_k p_l V_ijkl
//   {VT³V}     = −3 p_i p_j V_ijk V_k
//   {T(TV)²}   = −2 p_i (V_ijk V_k + V_ik V_kj) p_j
//   {V(TV)²}   =  2 V_i V_ij V_j

#include <optional>

#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/core/force_model.hpp"

namespace fsi {

template <RealNumber Real>
struct BracketValues {
  Real tv{0};
  Real ttv{0};
  Real vtv{0};
  std::optional<Real> tt3v;  // needs V_ijkl
  Real vt3v{0};
  Real ttvtv{0};
  Real vtvtv{0};
};

/// order 2 evaluates {T,V}, {T²V}, {VTV}; order 4 adds the fourth-order set.
/// {TT³V} is left empty when the model has no fourth derivative.
template <RealNumber Real>
[[nodiscard]] BracketValues<Real> evalBrackets(const ForceModel<Real>& force,
                                               const PhaseState<Real>& s, int order = 4) {
  if (order != 2 && order != 4) {
    throw ValidationError("brackets: order must be 2 or 4");
  }
  if (!force.force) {
    throw CapabilityError("force model '" + force.name + "' has no force: needed by {T,V}");
  }
  if (!force.hessian) {
    throw CapabilityError("force model '" + force.name + "' has no V_ij: needed by {T²V}");
  }
  const int d = static_cast<int>(s.q.size());
  const auto& p = s.p;
  Vec<Real> g = force.force(s.q);
  for (auto& x : g) {
    x = -x;
  }
  const Tensor<Real> h = force.hessian(s.q);

  BracketValues<Real> b;
  b.tv = -dot(p, g);
  b.vtv = -dot(g, g);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      b.ttv += p[i] * h(i, j) * p[j];
    }
  }
  if (order == 2) {
    return b;
  }

  if (!force.thirdDerivative) {
    throw CapabilityError("force model '" + force.name + "' has no V_ijk: needed by {VT³V}");
  }
  const Tensor<Real> t3 = force.thirdDerivative(s.q);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Real vk(0);  // V_ijk V_k
      Real hh(0);  // V_ik V_kj
      for (int k = 0; k < d; ++k) {
        vk += t3(i, j, k) * g[k];
        hh += h(i, k) * h(k, j);
      }
      b.vt3v += -3 * p[i] * p[j] * vk;
      b.ttvtv += -2 * p[i] * (vk + hh) * p[j];
      b.vtvtv += 2 * g[i] * h(i, j) * g[j];
    }
  }
  if (force.fourthDerivative) {
    const Tensor<Real> t4 = force.fourthDerivative(s.q);
    Real acc(0);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
          for (int l = 0; l < d; ++l) {
            acc += p[i] * p[j] * p[k] * p[l] * t4(i, j, k, l);
          }
        }
      }
    }
    b.tt3v = acc;
  }
  return b;
}

/// H_A = T + V + ε²(eTTV{T²V} + eVTV{VTV})
///     + ε⁴(eTTTTV{TT³V} + eVTTTV{VT³V} + eTTVTV{T(TV)²} + eVTVTV{V(TV)²}).
template <RealNumber Real>
[[nodiscard]] Real modifiedHamiltonian(const ErrorCoefficientSet<Real>& e,
                                       const ForceModel<Real>& force, const PhaseState<Real>& s,
                                       Real eps, int order = 4) {
  if (order != 2 && order != 4) {
    throw ValidationError("modified Hamiltonian: order must be 2 or 4");
  }
  const Real h = force.energy(s);
  if (eps == 0) {
    return h;
  }
  const auto b = evalBrackets(force, s, order);
  const Real e2 = eps * eps;
  Real ha = h + e2 * (e.eTTV * b.ttv + e.eVTV * b.vtv);
  if (order == 4) {
    Real tt3v(0);
    if (e.eTTTTV != 0) {
      if (!b.tt3v) {
        throw CapabilityError("force model '" + force.name + "' has no V_ijkl: needed by {TT³V}");
      }
      tt3v = *b.tt3v;
    }
    ha += e2 * e2 *
          (e.eTTTTV * tt3v + e.eVTTTV * b.vt3v + e.eTTVTV * b.ttvtv + e.eVTVTV * b.vtvtv);
  }
  return ha;
}

}  // namespace fsi
