#include "qfisim/ff/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfisim::ff {

std::vector<double> momentum_grid(int n_sites) {
  if (n_sites < 4 || n_sites % 2 != 0)
    throw std::invalid_argument("momentum_grid: n_sites must be even and >= 4");
  std::vector<double> grid;
  grid.reserve(n_sites);
  for (int n = -n_sites / 2; n < n_sites / 2; ++n)
    grid.push_back(2.0 * std::numbers::pi * (n + 0.5) / n_sites);
  return grid;
}

MomentumMode mode(double J, double lambda, double k) {
  if (!(J >= 0.0)) throw std::invalid_argument("mode: J must be >= 0");
  if (!(lambda > 0.0)) throw std::invalid_argument("mode: lambda must be > 0");
  MomentumMode m;
  m.k = k;
  const double c = std::cos(k), s = std::sin(k);
  m.epsilon = 2.0 * std::sqrt(J * J + lambda * lambda - 2.0 * J * lambda * c);
  if (m.epsilon <= 0.0)
    throw std::invalid_argument("mode: gapless momentum (k = 0 or pi at criticality?)");
  m.sin_theta = -2.0 * J * s / m.epsilon;
  m.cos_theta = 2.0 * (lambda - J * c) / m.epsilon;
  return m;
}

cplx g_kernel(cplx x) {
  if (std::abs(x) < 1e-6) {
    // (e^x - 1)/x = 1 + x/2 + x^2/6 + x^3/24 + O(x^4); next term < 1e-26
    return 1.0 + x * (0.5 + x * (1.0 / 6.0 + x * (1.0 / 24.0)));
  }
  // e^x - 1 without the 1-ulp cancellation of exp(x) - 1.0 at small |x|:
  // Re = expm1(a) cos b - 2 sin^2(b/2), Im = e^a sin b for x = a + ib
  const double a = x.real(), b = x.imag();
  const double sh = std::sin(0.5 * b);
  const cplx em1(std::expm1(a) * std::cos(b) - 2.0 * sh * sh, std::exp(a) * std::sin(b));
  return em1 / x;
}

AbdKernels abd_time_averaged(double J, double lambda, double t, double k) {
  const MomentumMode m = mode(J, lambda, k);
  const double s = m.sin_theta, c = m.cos_theta;
  const cplx arg(0.0, 2.0 * m.epsilon * t);
  const cplx gp = g_kernel(arg), gm = g_kernel(-arg);
  AbdKernels out;
  out.a = 1.0 + c * c + 0.5 * s * s * (gp + gm);
  out.b = 2.0 - out.a;
  out.d = cplx(0.0, 1.0) * s * c * (0.5 * (gp + gm) - 1.0) +
          cplx(0.0, 0.5) * s * (gp - gm);
  return out;
}

AbdKernels abd_instantaneous(double J, double lambda, double tau, double k) {
  const MomentumMode m = mode(J, lambda, k);
  const double s = m.sin_theta, c = m.cos_theta;
  const double cs = std::cos(2.0 * m.epsilon * tau), sn = std::sin(2.0 * m.epsilon * tau);
  AbdKernels out;
  out.a = 1.0 + c * c + s * s * cs;
  out.b = 2.0 - out.a;
  out.d = cplx(0.0, 1.0) * s * c * (cs - 1.0) - s * sn;
  return out;
}

}  // namespace qfisim::ff
