#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fsi/error.hpp"
#include "fsi/precision.hpp"

namespace fsi {

enum class StageKind { Drift, Kick };

/// Drift: q += ε·weight·p. Kick: p += ε·weight·F(q) + ε³·gradWeight·G(q).
template <RealNumber Real>
struct Stage {
  StageKind kind = StageKind::Drift;
  Real weight{0};
  Real gradWeight{0};

  friend bool operator==(const Stage&, const Stage&) = default;
};

template <RealNumber Real>
[[nodiscard]] Stage<Real> drift(Real w) {
  return {StageKind::Drift, w, Real(0)};
}

template <RealNumber Real>
[[nodiscard]] Stage<Real> kick(Real v, Real u = Real(0)) {
  return {StageKind::Kick, v, u};
}

enum class SchemeFamily { Custom, SecondOrder, ForceGradient4 };

/// Constructor parameters of a family member. For SecondOrder only alpha is meaningful.
template <RealNumber Real>
struct FamilyParams {
  SchemeFamily family = SchemeFamily::Custom;
  Real t0{0};
  Real alpha{0};

  friend bool operator==(const FamilyParams&, const FamilyParams&) = default;
};

template <RealNumber Real>
struct SplittingScheme {
  std::string name;
  std::vector<Stage<Real>> stages;
  int nominalOrder = 2;
  std::optional<FamilyParams<Real>> params;
  // Non-fatal diagnostics, e.g. "not forward". Not part of scheme identity.
  std::vector<std::string> warnings;

  friend bool operator==(const SplittingScheme& a, const SplittingScheme& b) {
    return a.name == b.name && a.stages == b.stages && a.nominalOrder == b.nominalOrder &&
           a.params == b.params;
  }
};

inline constexpr double kWeightSumTolerance = 1e-12;

/// Throws ValidationError naming the first violated invariant.
template <RealNumber Real>
void validateScheme(const SplittingScheme<Real>& s) {
  using std::abs;
  if (s.stages.empty()) {
    throw ValidationError("scheme '" + s.name + "': no stages");
  }
  if (s.nominalOrder != 2 && s.nominalOrder != 4) {
    throw ValidationError("scheme '" + s.name + "': nominal order must be 2 or 4");
  }
  Real driftSum(0);
  Real kickSum(0);
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    const auto& st = s.stages[i];
    if (!isFinite(st.weight) || !isFinite(st.gradWeight)) {
      throw ValidationError("scheme '" + s.name + "': non-finite weight at stage " +
                            std::to_string(i));
    }
    if (st.kind == StageKind::Drift) {
      if (st.gradWeight != 0) {
        throw ValidationError("scheme '" + s.name + "': drift stage " + std::to_string(i) +
                              " carries a gradient weight");
      }
      driftSum += st.weight;
    } else {
      kickSum += st.weight;
    }
  }
  if (abs(driftSum - 1) > kWeightSumTolerance) {
    throw ValidationError("scheme '" + s.name + "': drift weights must sum to 1");
  }
  if (abs(kickSum - 1) > kWeightSumTolerance) {
    throw ValidationError("scheme '" + s.name + "': kick weights must sum to 1");
  }
  const std::size_t n = s.stages.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const auto& a = s.stages[i];
    const auto& b = s.stages[n - 1 - i];
    if (a.kind != b.kind || abs(a.weight - b.weight) > kWeightSumTolerance ||
        abs(a.gradWeight - b.gradWeight) > kWeightSumTolerance) {
      throw ValidationError("scheme '" + s.name + "': stage list is not palindromic");
    }
  }
}

/// True iff every drift and kick weight is non-negative. Gradient weights are
/// exempt. Weights within 1e-14 of zero count as zero so t0 = t_c, where v2
/// vanishes analytically, stays forward despite rounding.
template <RealNumber Real>
[[nodiscard]] bool isForward(const SplittingScheme<Real>& s) {
  for (const auto& st : s.stages) {
    if (st.weight < Real(-1e-14)) {
      return false;
    }
  }
  return true;
}

/// [D ½, K(1, α), D ½]. α = 0 is leapfrog, α = 1/24 the Takahashi–Imada kernel.
template <RealNumber Real>
[[nodiscard]] SplittingScheme<Real> makeSecondOrder(Real alpha) {
  SplittingScheme<Real> s;
  s.name = "second-order(alpha=" + formatReal(real_cast<double>(alpha)) + ")";
  const Real half = Real(1) / 2;
  s.stages = {drift(half), kick(Real(1), alpha), drift(half)};
  s.nominalOrder = 2;
  s.params = FamilyParams<Real>{SchemeFamily::SecondOrder, Real(0), alpha};
  return s;
}

/// Upper end of the forward range of the 4ACB family, ½(1 − 1/√3).
template <RealNumber Real>
[[nodiscard]] Real forwardLimitT0() {
  using std::sqrt;
  return (1 - 1 / sqrt(Real(3))) / 2;
}

/// Seven-stage fourth-order force-gradient scheme
/// [D t0, K(v1, α/2·u0), D t1, K(v2, (1−α)u0), D t1, K(v1, α/2·u0), D t0].
template <RealNumber Real>
[[nodiscard]] SplittingScheme<Real> make4ACB(Real t0, Real alpha) {
  const Real w = 1 - 2 * t0;
  if (w == 0 || !isFinite(t0) || !isFinite(alpha)) {
    throw DomainError("4ACB: t0 = 1/2 is outside the family's domain");
  }
  const Real t1 = Real(1) / 2 - t0;
  const Real v1 = 1 / (6 * w * w);
  const Real v2 = 1 - 2 * v1;
  const Real u0 = (1 - 1 / w + 1 / (6 * w * w * w)) / 12;
  const Real uOuter = alpha / 2 * u0;
  const Real uMid = (1 - alpha) * u0;

  SplittingScheme<Real> s;
  s.name = "4acb(t0=" + formatReal(real_cast<double>(t0)) +
           ",alpha=" + formatReal(real_cast<double>(alpha)) + ")";
  s.stages = {drift(t0),         kick(v1, uOuter), drift(t1), kick(v2, uMid),
              drift(t1),         kick(v1, uOuter), drift(t0)};
  s.nominalOrder = 4;
  s.params = FamilyParams<Real>{SchemeFamily::ForceGradient4, t0, alpha};
  if (t0 < 0 || t0 > forwardLimitT0<Real>()) {
    s.warnings.emplace_back("not forward: t0 outside [0, t_c]");
  }
  return s;
}

/// Converts weights to another precision. Family members are rebuilt from their
/// parameters so derived weights pick up the target precision.
template <RealNumber To, RealNumber From>
[[nodiscard]] SplittingScheme<To> scheme_cast(const SplittingScheme<From>& s) {
  if (s.params) {
    const To t0 = real_cast<To>(s.params->t0);
    const To alpha = real_cast<To>(s.params->alpha);
    SplittingScheme<To> out;
    if (s.params->family == SchemeFamily::SecondOrder) {
      out = makeSecondOrder(alpha);
      out.name = s.name;
      return out;
    }
    if (s.params->family == SchemeFamily::ForceGradient4) {
      out = make4ACB(t0, alpha);
      out.name = s.name;
      return out;
    }
  }
  SplittingScheme<To> out;
  out.name = s.name;
  out.nominalOrder = s.nominalOrder;
  out.warnings = s.warnings;
  for (const auto& st : s.stages) {
    out.stages.push_back({st.kind, real_cast<To>(st.weight), real_cast<To>(st.gradWeight)});
  }
  if (s.params) {
    out.params = FamilyParams<To>{s.params->family, real_cast<To>(s.params->t0),
                                  real_cast<To>(s.params->alpha)};
  }
  return out;
}

}  // namespace fsi
