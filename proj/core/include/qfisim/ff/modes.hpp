#pragma once

#include <complex>
#include <vector>

namespace qfisim::ff {

using cplx = std::complex<double>;

// One antiperiodic-sector momentum mode of the periodic transverse-field
// Ising chain: dispersion eps_k = 2 sqrt(J^2 + lambda^2 - 2 J lambda cos k)
// and Bogoliubov angle with sin(theta_k) = -2 J sin k / eps_k,
// cos(theta_k) = 2 (lambda - J cos k) / eps_k.
struct MomentumMode {
  double k = 0.0;
  double epsilon = 0.0;
  double sin_theta = 0.0;
  double cos_theta = 0.0;
};

// k = 2 pi (n + 1/2) / N for n = -N/2 .. N/2-1. Even N >= 4 required (the
// odd-parity sector is out of scope); contains neither k=0 nor k=pi and is
// symmetric under k -> -k.
std::vector<double> momentum_grid(int n_sites);

// J >= 0, lambda > 0. (J=0 is the commuting chain; the gap 2|lambda - J|
// never closes on the antiperiodic grid since k=0 is excluded.)
MomentumMode mode(double J, double lambda, double k);

// g(x) = (e^x - 1)/x with a 4-term series branch for |x| < 1e-6 to avoid
// cancellation; g(0) = 1.
cplx g_kernel(cplx x);

struct AbdKernels {
  cplx a, b, d;
};

// Kernels of the time-averaged generator G(t)/t:
//   A = 1 + cos^2 th + (1/2) sin^2 th [g(2 i eps t) + g(-2 i eps t)],  B = 2 - A,
//   D = i sin th cos th [ (g(2 i eps t)+g(-2 i eps t))/2 - 1 ] + (i/2) sin th [g(2 i eps t)-g(-2 i eps t)].
AbdKernels abd_time_averaged(double J, double lambda, double t, double k);

// Kernels of the instantaneous Heisenberg-evolved derivative [dH](tau):
//   A = 1 + cos^2 th + sin^2 th cos(2 eps tau),  B = 2 - A,
//   D = i sin th cos th [cos(2 eps tau) - 1] - sin th sin(2 eps tau).
AbdKernels abd_instantaneous(double J, double lambda, double tau, double k);

}  // namespace qfisim::ff
