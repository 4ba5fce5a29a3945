#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace qfisim::detail {

inline constexpr double kQfiNoiseFloor = 1e-12;  // below this, d sqrt(I)/dt := Gamma

// Derivative at every node from the local Lagrange interpolant through up to
// five neighboring nodes (centered stencil inside, one-sided at the ends).
// Handles nonuniform grids; on uniform ones the interior reduces to standard
// fourth-order central differences. Grids shorter than the stencil fall back
// to the widest polynomial they support.
inline std::vector<double> lagrange_derivative(const std::vector<double>& x,
                                               const std::vector<double>& f) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (x[1] - x[0]);
    return d;
  }
  // Five-point stencils only when the grid can also support the matching
  // fifth-difference error estimate below; otherwise stay quadratic.
  const std::size_t m = (n >= 6) ? 5 : 3;
  for (std::size_t i = 0; i < n; ++i) {
    // window of m nodes around i, clamped to the grid
    std::size_t lo = (i > m / 2) ? i - m / 2 : 0;
    lo = std::min(lo, n - m);
    const double xe = x[i];
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + m; ++j) {
      // L_j'(xe) = sum_{p != j} prod_{k != j,p} (xe - x_k) / prod_{k != j} (x_j - x_k)
      double denom = 1.0, num = 0.0;
      for (std::size_t k = lo; k < lo + m; ++k)
        if (k != j) denom *= x[j] - x[k];
      for (std::size_t p = lo; p < lo + m; ++p) {
        if (p == j) continue;
        double prod = 1.0;
        for (std::size_t k = lo; k < lo + m; ++k)
          if (k != j && k != p) prod *= xe - x[k];
        num += prod;
      }
      acc += f[j] * num / denom;
    }
    d[i] = acc;
  }
  return d;
}

// Truncation tolerance matched to the stencil above. A five-point stencil
// carries an h^4 f^(5) error (constant 1/30 centered, up to 1/5 one-sided);
// f^(5) is estimated from the largest fifth difference of sqrt(I) itself, so
// tol = d5 / (5 h). Grids of 4-5 points run the three-point stencil and its
// h^2 f'''/3 model with f''' from third differences. Fewer than four samples
// leave the curvature invisible: no finite tolerance can be justified and the
// bound is not certifiable on such grids.
inline double estimate_tol_rate(const std::vector<double>& t, const std::vector<double>& s) {
  const std::size_t n = t.size();
  if (n < 4) return std::numeric_limits<double>::infinity();
  const double h = (t.back() - t.front()) / double(n - 1);
  if (n < 6) {
    double d3 = 0.0;
    for (std::size_t i = 0; i + 3 < n; ++i)
      d3 = std::max(d3, std::abs(s[i + 3] - 3 * s[i + 2] + 3 * s[i + 1] - s[i]));
    return std::max(1e-4, d3 / (3.0 * h));
  }
  double d5 = 0.0;
  for (std::size_t i = 0; i + 5 < n; ++i)
    d5 = std::max(d5, std::abs(s[i + 5] - 5 * s[i + 4] + 10 * s[i + 3] - 10 * s[i + 2] +
                               5 * s[i + 1] - s[i]));
  return std::max(1e-4, d5 / (5.0 * h));
}

}  // namespace qfisim::detail
