#pragma once

// One-dimensional scans over t0 with classification of minima, zeros and
// poles. Minima are minima of |f|; the reported value keeps the sign of f.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fsi/algebra/error_coefficients.hpp"
#include "fsi/numerics/optimize.hpp"
#include "fsi/numerics/parallel.hpp"
#include "fsi/oscillator/energy.hpp"
#include "fsi/oscillator/frequency.hpp"

namespace fsi {

enum class PointStatus { Ok, Pole, Unstable, Failed };
enum class ExtremumKind { Min, Zero, Pole };

[[nodiscard]] inline const char* toString(PointStatus s) {
  switch (s) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::Pole:
      return "pole";
    case PointStatus::Unstable:
      return "unstable";
    case PointStatus::Failed:
      return "failed";
  }
  return "?";
}

[[nodiscard]] inline const char* toString(ExtremumKind k) {
  switch (k) {
    case ExtremumKind::Min:
      return "min";
    case ExtremumKind::Zero:
      return "zero";
    case ExtremumKind::Pole:
      return "pole";
  }
  return "?";
}

struct ScanPoint {
  double t0 = 0;
  std::optional<double> value;  // empty when the evaluation failed
  PointStatus status = PointStatus::Ok;
  std::string message;
};

struct Extremum {
  ExtremumKind kind = ExtremumKind::Min;
  double location = 0;
  std::optional<double> value;  // signed objective; empty at a pole
  double bracketWidth = 0;
};

struct ScanResult {
  std::vector<ScanPoint> grid;
  std::vector<Extremum> extrema;

  [[nodiscard]] std::vector<Extremum> of(ExtremumKind k) const {
    std::vector<Extremum> out;
    std::copy_if(extrema.begin(), extrema.end(), std::back_inserter(out),
                 [k](const Extremum& e) { return e.kind == k; });
    return out;
  }

  /// The minimum with the smallest |value|, if any.
  [[nodiscard]] std::optional<Extremum> deepestMin() const {
    std::optional<Extremum> best;
    for (const auto& e : extrema) {
      if (e.kind == ExtremumKind::Min && (!best || std::abs(*e.value) < std::abs(*best->value))) {
        best = e;
      }
    }
    return best;
  }
};

struct ScanOptions {
  double tol = 1e-12;
  double poleFactor = 1e3;  // |f| above this multiple of the median marks a pole
  unsigned threads = 1;
};

using Objective = std::function<double(double)>;

namespace detail {

inline ScanPoint evaluatePoint(const Objective& f, double t) {
  ScanPoint p;
  p.t0 = t;
  try {
    const double v = f(t);
    if (!std::isfinite(v)) {
      p.status = PointStatus::Pole;
      p.message = "non-finite objective";
    } else {
      p.value = v;
    }
  } catch (const PoleError& e) {
    p.status = PointStatus::Pole;
    p.message = e.what();
  } catch (const InstabilityError& e) {
    p.status = PointStatus::Unstable;
    p.message = e.what();
  } catch (const Error& e) {
    p.status = PointStatus::Failed;
    p.message = e.what();
  }
  return p;
}

}  // namespace detail

/// Uniform grid of `points` values on [a, b] with extrema refined to opt.tol.
inline ScanResult scan1D(const Objective& f, double a, double b, std::size_t points,
                         const ScanOptions& opt = {}) {
  if (points < 3) {
    throw ValidationError("scan: at least 3 grid points are required");
  }
  if (!(a < b)) {
    throw ValidationError("scan: interval must satisfy a < b");
  }
  ScanResult r;
  r.grid.resize(points);
  const double h = (b - a) / static_cast<double>(points - 1);
  parallelFor(points, opt.threads, [&](std::size_t i) {
    const double t = i + 1 == points ? b : a + h * static_cast<double>(i);
    r.grid[i] = detail::evaluatePoint(f, t);
  });
  auto& g = r.grid;

  std::vector<double> mags;
  for (const auto& p : g) {
    if (p.status == PointStatus::Ok) {
      mags.push_back(std::abs(*p.value));
    }
  }
  if (mags.empty()) {
    return r;
  }
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2),
                   mags.end());
  const double median = mags[mags.size() / 2];
  for (auto& p : g) {
    if (p.status == PointStatus::Ok && std::abs(*p.value) > opt.poleFactor * median) {
      p.status = PointStatus::Pole;
      p.message = "pole-adjacent: |f| exceeds the median by " + formatReal(opt.poleFactor);
    }
  }
  auto ok = [&](std::size_t i) { return g[i].status == PointStatus::Ok; };
  auto value = [&](double t) { return f(t); };
  auto magnitude = [&](double t) { return std::abs(f(t)); };
  const std::size_t n = g.size();

  // Poles: runs of pole or unstable points, refined as the zero of 1/|f|.
  for (std::size_t i = 0; i < n;) {
    if (g[i].status != PointStatus::Pole && g[i].status != PointStatus::Unstable) {
      ++i;
      continue;
    }
    std::size_t j = i;
    bool pole = false;
    while (j < n && (g[j].status == PointStatus::Pole || g[j].status == PointStatus::Unstable)) {
      pole = pole || g[j].status == PointStatus::Pole;
      ++j;
    }
    if (pole) {
      const double lo = g[i == 0 ? 0 : i - 1].t0;
      const double hi = g[j == n ? n - 1 : j].t0;
      const auto m = goldenSectionMinimize(
          [&](double t) {
            try {
              const double v = f(t);
              return std::isfinite(v) ? 1 / std::abs(v) : 0.0;
            } catch (const Error&) {
              return 0.0;  // evaluation breaks down only in the pole's core
            }
          },
          lo, hi, opt.tol);
      r.extrema.push_back({ExtremumKind::Pole, m.x, std::nullopt, m.bracketWidth});
    }
    i = j;
  }

  // Zeros: sign changes between neighbouring regular points.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!ok(i) || !ok(i + 1)) {
      continue;
    }
    const double fa = *g[i].value;
    const double fb = *g[i + 1].value;
    if (fa == 0) {
      r.extrema.push_back({ExtremumKind::Zero, g[i].t0, 0.0, 0});
    } else if (fb != 0 && (fa > 0) != (fb > 0)) {
      // An odd pole between grid points also flips the sign; bisection then
      // closes in on a point where |f| blows up instead of vanishing.
      std::optional<double> fz;
      double z = 0;
      try {
        z = bisect(value, g[i].t0, g[i + 1].t0, opt.tol);
        fz = f(z);
      } catch (const Error&) {
      }
      const bool pole = !fz || !std::isfinite(*fz) ||
                        std::abs(*fz) > std::max(std::abs(fa), std::abs(fb));
      if (pole) {
        r.extrema.push_back({ExtremumKind::Pole, z, std::nullopt, opt.tol});
      } else {
        r.extrema.push_back({ExtremumKind::Zero, z, fz, opt.tol});
      }
    }
  }

  // Minima of |f| bracketed by regular neighbours without a sign change.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!ok(i - 1) || !ok(i) || !ok(i + 1)) {
      continue;
    }
    const double fl = *g[i - 1].value;
    const double fm = *g[i].value;
    const double fr = *g[i + 1].value;
    if (fm == 0 || (fl > 0) != (fm > 0) || (fr > 0) != (fm > 0)) {
      continue;
    }
    if (std::abs(fm) > std::abs(fl) || std::abs(fm) > std::abs(fr)) {
      continue;
    }
    if (std::abs(fm) == std::abs(fl) && i > 1) {
      continue;  // a plateau is reported once, from its left end
    }
    const auto m = goldenSectionMinimize(magnitude, g[i - 1].t0, g[i + 1].t0, opt.tol);
    r.extrema.push_back({ExtremumKind::Min, m.x, f(m.x), m.bracketWidth});
  }

  std::sort(r.extrema.begin(), r.extrema.end(),
            [](const Extremum& x, const Extremum& y) { return x.location < y.location; });
  return r;
}

/// ω⁽⁶⁾/ω = c6 of the correctable 4ACB member at t0.
template <RealNumber Real>
[[nodiscard]] Objective freq6Objective(double omega = 1) {
  return [omega](double t0) {
    const Real t(t0);
    const auto s = make4ACB<Real>(t, correctableAlpha<Real>(t));
    return real_cast<double>(frequencySeries<Real>(s, Real(omega)).c6);
  };
}

/// Fitted E10 of the correctable 4ACB member at t0.
template <RealNumber Real>
[[nodiscard]] Objective energy10Objective(double omega = 1, double q0 = 1, double p0 = 1) {
  return [=](double t0) {
    const Real t(t0);
    const auto s = make4ACB<Real>(t, correctableAlpha<Real>(t));
    return real_cast<double>(energyErrorSeries<Real>(s, Real(omega), Real(q0), Real(p0)).E(10));
  };
}

/// scan1D of the fitted E10 in extended precision.
inline ScanResult scanEnergy10(double a, double b, std::size_t points, double q0 = 1, double p0 = 1,
                               const ScanOptions& opt = {}) {
  return scan1D(energy10Objective<Extended>(1, q0, p0), a, b, points, opt);
}

}  // namespace fsi
