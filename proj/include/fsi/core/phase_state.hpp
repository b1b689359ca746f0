#pragma once

#include <cstddef>
#include <vector>

#include "fsi/error.hpp"
#include "fsi/precision.hpp"

namespace fsi {

template <RealNumber Real>
using Vec = std::vector<Real>;

/// Canonical pair (q, p) of a separable Hamiltonian plus elapsed time.
template <RealNumber Real>
struct PhaseState {
  Vec<Real> q;
  Vec<Real> p;
  Real t{0};

  [[nodiscard]] std::size_t dim() const noexcept { return q.size(); }

  friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

template <RealNumber Real>
[[nodiscard]] PhaseState<Real> makeState(Vec<Real> q, Vec<Real> p, Real t = Real(0)) {
  if (q.size() != p.size()) {
    throw ValidationError("phase state: q and p differ in dimension");
  }
  if (q.empty() || q.size() > 2) {
    throw ValidationError("phase state: dimension must be 1 or 2");
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!isFinite(q[i]) || !isFinite(p[i])) {
      throw ValidationError("phase state: non-finite component");
    }
  }
  return PhaseState<Real>{std::move(q), std::move(p), t};
}

template <RealNumber Real>
[[nodiscard]] Real dot(const Vec<Real>& a, const Vec<Real>& b) {
  Real s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

template <RealNumber Real>
[[nodiscard]] PhaseState<Real> flipMomentum(PhaseState<Real> s) {
  for (auto& x : s.p) {
    x = -x;
  }
  return s;
}

}  // namespace fsi
