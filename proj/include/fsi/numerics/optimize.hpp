#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "fsi/error.hpp"

namespace fsi {

struct Minimum {
  double x = 0;
  double value = 0;
  double bracketWidth = 0;
};

/// Golden-section search for a minimum of f on [a, b] down to width tol.
inline Minimum goldenSectionMinimize(const std::function<double(double)>& f, double a, double b,
                                     double tol) {
  if (a > b) {
    std::swap(a, b);
  }
  if (b - a <= tol) {
    const double m = a == b ? a : (a + b) / 2;
    return {m, f(m), b - a};
  }
  const double invPhi = (std::sqrt(5.0) - 1) / 2;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = f(d);
    }
    if (c >= d) {
      break;
    }
  }
  return fc <= fd ? Minimum{c, fc, b - a} : Minimum{d, fd, b - a};
}

/// Bisection for a sign change of f on [a, b] down to width tol.
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  const double fb = f(b);
  if (fa == 0) {
    return a;
  }
  if (fb == 0) {
    return b;
  }
  if ((fa > 0) == (fb > 0)) {
    throw DomainError("bisection: no sign change on the bracket");
  }
  while (b - a > tol) {
    const double m = a + (b - a) / 2;
    if (m <= a || m >= b) {
      break;
    }
    const double fm = f(m);
    if (fm == 0) {
      return m;
    }
    if ((fm > 0) == (fa > 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return a + (b - a) / 2;
}

}  // namespace fsi
