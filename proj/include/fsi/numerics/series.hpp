#pragma once

// Power-series coefficient extraction from samples on a geometric ladder.
//
// Samples y_j = f(x_j), x_j = x0·r^j, are modelled as Σ_k a_k x_j^(k+1) and the
// ladder is solved exactly (Richardson extrapolation in closed form). Each
// coefficient's error is estimated from the change between depth D−1 and D.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "fsi/error.hpp"
#include "fsi/precision.hpp"

namespace fsi {

template <RealNumber Real>
struct SeriesFit {
  std::vector<Real> coefficients;  // a_0 … a_{D−1}, multiplying x^1 … x^D
  std::vector<Real> errors;        // |a_k(D) − a_k(D−1)|, undefined (0) for the top term
  std::vector<Real> samples;       // y_j
  std::vector<Real> abscissae;     // x_j
};

namespace detail {

/// Solves the Vandermonde-type system Σ_k a_k x_j^(k+1) = y_j by Gaussian
/// elimination with partial pivoting on the first n samples.
template <RealNumber Real>
std::vector<Real> solvePowerFit(const std::vector<Real>& x, const std::vector<Real>& y,
                                std::size_t n) {
  using std::abs;
  std::vector<std::vector<Real>> a(n, std::vector<Real>(n + 1));
  for (std::size_t j = 0; j < n; ++j) {
    Real pw = x[j];
    for (std::size_t k = 0; k < n; ++k) {
      a[j][k] = pw;
      pw *= x[j];
    }
    a[j][n] = y[j];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (abs(a[r][c]) > abs(a[piv][c])) {
        piv = r;
      }
    }
    std::swap(a[c], a[piv]);
    if (a[c][c] == 0) {
      throw ExtractionError("series fit: singular ladder");
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const Real m = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) {
        a[r][k] -= m * a[c][k];
      }
    }
  }
  std::vector<Real> sol(n);
  for (std::size_t c = n; c-- > 0;) {
    Real s = a[c][n];
    for (std::size_t k = c + 1; k < n; ++k) {
      s -= a[c][k] * sol[k];
    }
    sol[c] = s / a[c][c];
  }
  return sol;
}

}  // namespace detail

/// Fits y(x) = Σ a_k x^(k+1) on the ladder x_j = x0·ratio^j, j < depth.
/// The caller supplies the samples already evaluated (so they may be computed
/// in parallel).
template <RealNumber Real>
[[nodiscard]] SeriesFit<Real> fitPowerSeries(const std::vector<Real>& x, const std::vector<Real>& y) {
  using std::abs;
  const std::size_t depth = x.size();
  if (depth < 3 || y.size() != depth) {
    throw ExtractionError("series fit needs at least three ladder points");
  }
  SeriesFit<Real> fit;
  fit.abscissae = x;
  fit.samples = y;
  fit.coefficients = detail::solvePowerFit(x, y, depth);
  const auto lower = detail::solvePowerFit(x, y, depth - 1);
  fit.errors.assign(depth, Real(0));
  for (std::size_t k = 0; k + 1 < depth; ++k) {
    fit.errors[k] = abs(fit.coefficients[k] - lower[k]);
  }
  return fit;
}

/// Convergence check for the leading `terms` coefficients: the depth-D change
/// must be smaller than the depth-(D−1) change, unless both sit below `floor`
/// (coefficients that vanish exactly only show rounding noise).
template <RealNumber Real>
void requireConverged(const std::vector<Real>& x, const std::vector<Real>& y, std::size_t terms,
                      const Real& floor, const std::string& what) {
  using std::abs;
  const std::size_t depth = x.size();
  if (depth < terms + 3) {
    throw ExtractionError(what + ": ladder too short for " + std::to_string(terms) + " terms");
  }
  const auto d0 = detail::solvePowerFit(x, y, depth);
  const auto d1 = detail::solvePowerFit(x, y, depth - 1);
  const auto d2 = detail::solvePowerFit(x, y, depth - 2);
  for (std::size_t k = 0; k < terms; ++k) {
    const Real late = abs(d0[k] - d1[k]);
    const Real early = abs(d1[k] - d2[k]);
    if (late <= floor) {
      continue;
    }
    if (!(late < early)) {
      throw ExtractionError(what + ": residuals not decreasing for term " + std::to_string(k + 1));
    }
  }
}

}  // namespace fsi
