#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

#include "fsi/core/force_model.hpp"
#include "fsi/core/phase_state.hpp"
#include "fsi/core/scheme.hpp"
#include "fsi/error.hpp"

namespace fsi {

namespace detail {

template <RealNumber Real>
void requireFinite(const Vec<Real>& v, std::size_t stage, const char* what) {
  for (const auto& x : v) {
    if (!isFinite(x)) {
      throw SingularityError(std::string("non-finite ") + what, stage);
    }
  }
}

}  // namespace detail

/// Applies the stages left to right and advances t by eps.
template <RealNumber Real>
[[nodiscard]] PhaseState<Real> stepOnce(const SplittingScheme<Real>& scheme,
                                        const ForceModel<Real>& force, PhaseState<Real> s,
                                        Real eps) {
  if (eps < 0 || !isFinite(eps)) {
    throw DomainError("step size must be finite and non-negative");
  }
  if (eps == 0) {
    return s;
  }
  const Real eps3 = eps * eps * eps;
  const std::size_t d = s.q.size();
  for (std::size_t i = 0; i < scheme.stages.size(); ++i) {
    const auto& st = scheme.stages[i];
    if (st.kind == StageKind::Drift) {
      if (st.weight != 0) {
        const Real c = eps * st.weight;
        for (std::size_t k = 0; k < d; ++k) {
          s.q[k] += c * s.p[k];
        }
      }
      continue;
    }
    if (st.weight == 0 && st.gradWeight == 0) {
      continue;
    }
    try {
      if (st.weight != 0) {
        const Vec<Real> f = force.force(s.q);
        detail::requireFinite(f, i, "force");
        const Real c = eps * st.weight;
        for (std::size_t k = 0; k < d; ++k) {
          s.p[k] += c * f[k];
        }
      }
      if (st.gradWeight != 0) {
        if (!force.forceGradient) {
          throw CapabilityError("force model '" + force.name + "' provides no force gradient");
        }
        // Evaluated at the same q: the kick only changes p.
        const Vec<Real> g = force.forceGradient(s.q);
        detail::requireFinite(g, i, "force gradient");
        const Real c = eps3 * st.gradWeight;
        for (std::size_t k = 0; k < d; ++k) {
          s.p[k] += c * g[k];
        }
      }
    } catch (const SingularityError& e) {
      if (e.stage()) {
        throw;
      }
      throw SingularityError(e.detail(), i);
    }
  }
  s.t += eps;
  return s;
}

/// n steps of size eps. Returns every sampleEvery-th state plus the final one;
/// the initial state is not included.
template <RealNumber Real>
[[nodiscard]] std::vector<PhaseState<Real>> integrate(const SplittingScheme<Real>& scheme,
                                                      const ForceModel<Real>& force,
                                                      PhaseState<Real> s0, Real eps,
                                                      std::size_t n, std::size_t sampleEvery = 1) {
  if (n < 1) {
    throw ValidationError("integrate: n must be at least 1");
  }
  if (sampleEvery < 1) {
    throw ValidationError("integrate: sampleEvery must be at least 1");
  }
  std::vector<PhaseState<Real>> out;
  out.reserve(n / sampleEvery + 1);
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      s0 = stepOnce(scheme, force, std::move(s0), eps);
    } catch (const SingularityError& e) {
      throw e.atStep(k);
    }
    if (k % sampleEvery == 0 || k == n) {
      out.push_back(s0);
    }
  }
  return out;
}

/// Anything that advances a state by one step of size eps. Lets diagnostics run
/// on reference integrators as well as splitting schemes.
template <class P, class Real>
concept Propagator = requires(const P& prop, PhaseState<Real> s, Real eps) {
  { prop.step(s, eps) } -> std::convertible_to<PhaseState<Real>>;
};

template <RealNumber Real>
struct SchemePropagator {
  const SplittingScheme<Real>* scheme;
  const ForceModel<Real>* force;

  [[nodiscard]] PhaseState<Real> step(PhaseState<Real> s, Real eps) const {
    return stepOnce(*scheme, *force, std::move(s), eps);
  }
};

}  // namespace fsi
