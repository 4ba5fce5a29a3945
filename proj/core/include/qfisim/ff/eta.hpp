#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qfisim/ff/modes.hpp"

namespace qfisim::ff {

enum class EtaKernel {
  // Fourier transform of the time-averaged kernels (the G(t)/t decomposition).
  // Its t->inf limit is exactly the closed-form table, so finite-(N, t)
  // tables converge to it; this is the default and what the decay-ratio
  // checks run on.
  TimeAveraged,
  // Fourier transform of the instantaneous kernels (the [dH](t)
  // decomposition). Its oscillatory part only vanishes in the N->inf limit
  // (Riemann-Lebesgue needs the k-sum to become an integral first), so
  // finite-N tables carry O(1/sqrt(N)) residual ripple at large t.
  Instantaneous,
};

// Coefficients eta^alpha_{ij} (families alpha = 1..4, 0-based sites i <= j) of
// the evolved generator expanded over the four Hermitian fermion-bilinear
// families O1 = c_i+ c_j + h.c., O2 = c_i c_j+ + h.c., O3 = c_i+ c_j+ + h.c.,
// O4 = i (c_i+ c_j+ - h.c.). Families 3 and 4 have zero diagonal.
struct EtaTable {
  int n_sites = 0;
  double t = 0.0;
  EtaKernel kernel = EtaKernel::TimeAveraged;
  std::array<Eigen::MatrixXd, 4> eta;  // upper triangle (j >= i) populated

  double at(int family, int i, int j) const { return eta[family - 1](i, j); }
};

// Builds the table by discrete Fourier transform of the kernels over the
// antiperiodic grid. Imaginary residues of the symmetric transforms are
// asserted below 1e-10 and discarded. N even >= 4.
EtaTable eta_table(double J, double lambda, double t, int n_sites,
                   EtaKernel kernel = EtaKernel::TimeAveraged);

// The t->inf, N->inf closed forms (A~, B~, D~) at fixed separation ell >= 0,
// for the three regimes J < lambda, J = lambda, J > lambda. On a finite ring
// the transform also carries antiperiodic images (separation N - ell enters
// with the sign of separation -ell), so finite tables match these only for
// ell well below n_sites.
struct EtaClosedForm {
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  double d_tilde = 0.0;
};
EtaClosedForm eta_closed_form(double J, double lambda, int ell);

// EtaTable assembled from the closed forms (t = +inf sentinel in the struct).
EtaTable eta_table_closed_form(double J, double lambda, int n_sites);

// Double tail sum C(k_cut) = sum_{i <= k_cut <= j} |eta^family_{ij}| with
// 1-based k_cut in [1, N]; bounded uniformly in N at large t for families
// 1-3 (family 4 is a finite-t residual that vanishes as t grows).
double eta_tail_sum(const EtaTable& table, int family, int k_cut);

// Dense spin-basis realization of N*Id + sum eta O: the generator density
// G(t)/t in the +sum sigma_z derivative convention (the library dH is the
// global-sign flip). For tests at small N.
Eigen::MatrixXcd reconstruct_generator_density(const EtaTable& table);

namespace detail {
// tilde(F)(ell) = (1/N) sum_k F(k) e^{i k ell} for ell in [-(N-1), N-1],
// returned with offset N-1. Antiperiodic in ell with period N.
std::vector<cplx> tilde_transform(const std::vector<cplx>& fk,
                                  const std::vector<double>& grid, int n_sites);
}  // namespace detail

}  // namespace qfisim::ff
