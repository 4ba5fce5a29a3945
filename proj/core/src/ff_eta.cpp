#include "qfisim/ff/eta.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfisim/ff/strings.hpp"
#include "qfisim/pauli.hpp"

namespace qfisim::ff {

namespace detail {

std::vector<cplx> tilde_transform(const std::vector<cplx>& fk,
                                  const std::vector<double>& grid, int n_sites) {
  if (fk.size() != grid.size() || int(grid.size()) != n_sites)
    throw std::invalid_argument("tilde_transform: grid/value size mismatch");
  std::vector<cplx> out(2 * n_sites - 1, cplx(0.0, 0.0));
  for (int ell = -(n_sites - 1); ell <= n_sites - 1; ++ell) {
    cplx acc(0.0, 0.0);
    for (int q = 0; q < n_sites; ++q)
      acc += fk[q] * std::polar(1.0, grid[q] * ell);
    out[ell + n_sites - 1] = acc / double(n_sites);
  }
  return out;
}

}  // namespace detail

namespace {

// Incremental geometric factor; plain multiplication keeps dyadic parameter
// points exact (needed for the machine-precision table checks).
double int_pow(double base, int e) {
  double p = 1.0;
  for (int m = 0; m < e; ++m) p *= base;
  return p;
}

void check_even_sites(int n_sites) {
  if (n_sites < 4 || n_sites % 2 != 0)
    throw std::invalid_argument("eta table: n_sites must be even and >= 4");
}

EtaTable assemble(int n_sites, double t, EtaKernel kernel,
                  const std::vector<cplx>& at, const std::vector<cplx>& bt,
                  const std::vector<cplx>& dt) {
  const int off = n_sites - 1;
  double im_residue = 0.0;
  for (int ell = 0; ell < n_sites; ++ell) {
    im_residue = std::max(im_residue, std::abs(at[off + ell].imag()));
    im_residue = std::max(im_residue, std::abs(bt[off + ell].imag()));
  }
  if (im_residue > 1e-10)
    throw NumericalInvariantError("eta table: symmetric kernel transform has imaginary residue");

  EtaTable tab;
  tab.n_sites = n_sites;
  tab.t = t;
  tab.kernel = kernel;
  for (auto& m : tab.eta) m = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    tab.eta[0](i, i) = -at[off].real() / 2.0;
    tab.eta[1](i, i) = -bt[off].real() / 2.0;
    for (int j = i + 1; j < n_sites; ++j) {
      const int ell = j - i;
      tab.eta[0](i, j) = -at[off + ell].real();
      tab.eta[1](i, j) = -bt[off + ell].real();
      tab.eta[2](i, j) = -2.0 * dt[off + ell].real();
      tab.eta[3](i, j) = -2.0 * dt[off + ell].imag();
    }
  }
  return tab;
}

}  // namespace

EtaTable eta_table(double J, double lambda, double t, int n_sites, EtaKernel kernel) {
  check_even_sites(n_sites);
  if (!(t >= 0.0)) throw std::invalid_argument("eta_table: t must be nonnegative");
  const std::vector<double> grid = momentum_grid(n_sites);
  std::vector<cplx> ak(n_sites), bk(n_sites), dk(n_sites);
  for (int q = 0; q < n_sites; ++q) {
    const AbdKernels kr = (kernel == EtaKernel::TimeAveraged)
                              ? abd_time_averaged(J, lambda, t, grid[q])
                              : abd_instantaneous(J, lambda, t, grid[q]);
    ak[q] = kr.a;
    bk[q] = kr.b;
    dk[q] = kr.d;
  }
  const auto at = detail::tilde_transform(ak, grid, n_sites);
  const auto bt = detail::tilde_transform(bk, grid, n_sites);
  const auto dt = detail::tilde_transform(dk, grid, n_sites);
  return assemble(n_sites, t, kernel, at, bt, dt);
}

EtaClosedForm eta_closed_form(double J, double lambda, int ell) {
  if (ell < 0) throw std::invalid_argument("eta_closed_form: ell must be >= 0");
  if (!(J >= 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("eta_closed_form: need J >= 0, lambda > 0");
  EtaClosedForm f;
  if (J == lambda) {
    if (ell == 0) {
      f.a_tilde = 1.5;
      f.b_tilde = 0.5;
      f.d_tilde = 0.0;
    } else if (ell == 1) {
      f.a_tilde = -0.25;
      f.b_tilde = 0.25;
      f.d_tilde = -0.25;
    }  // zero beyond ell = 1
  } else if (J > lambda) {
    if (ell == 0) {
      f.a_tilde = 1.5;
      f.b_tilde = 0.5;
      f.d_tilde = 0.0;
    } else if (ell == 1) {
      f.a_tilde = -lambda / (4.0 * J);
      f.b_tilde = lambda / (4.0 * J);
      f.d_tilde = -lambda / (4.0 * J);
    } else {
      const double tail =
          (J * J - lambda * lambda) / (4.0 * J * J) * int_pow(lambda / J, ell - 2);
      f.a_tilde = tail;
      f.b_tilde = -tail;
      f.d_tilde = tail;
    }
  } else {  // J < lambda
    if (ell == 0) {
      f.a_tilde = 2.0 - J * J / (2.0 * lambda * lambda);
      f.b_tilde = J * J / (2.0 * lambda * lambda);
      f.d_tilde = 0.0;
    } else if (ell == 1) {
      f.a_tilde = -J * J * J / (4.0 * lambda * lambda * lambda);
      f.b_tilde = J * J * J / (4.0 * lambda * lambda * lambda);
      f.d_tilde = (J * J * J - 2.0 * J * lambda * lambda) / (4.0 * lambda * lambda * lambda);
    } else {
      const double tail =
          (lambda * lambda - J * J) / (4.0 * lambda * lambda) * int_pow(J / lambda, ell);
      f.a_tilde = tail;
      f.b_tilde = -tail;
      f.d_tilde = -tail;
    }
  }
  return f;
}

EtaTable eta_table_closed_form(double J, double lambda, int n_sites) {
  check_even_sites(n_sites);
  EtaTable tab;
  tab.n_sites = n_sites;
  tab.t = std::numeric_limits<double>::infinity();
  tab.kernel = EtaKernel::TimeAveraged;
  for (auto& m : tab.eta) m = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (int i = 0; i < n_sites; ++i) {
    const EtaClosedForm f0 = eta_closed_form(J, lambda, 0);
    tab.eta[0](i, i) = -f0.a_tilde / 2.0;
    tab.eta[1](i, i) = -f0.b_tilde / 2.0;
    for (int j = i + 1; j < n_sites; ++j) {
      const EtaClosedForm f = eta_closed_form(J, lambda, j - i);
      tab.eta[0](i, j) = -f.a_tilde;
      tab.eta[1](i, j) = -f.b_tilde;
      // The closed-form D~ is real, so only the third family survives.
      tab.eta[2](i, j) = -2.0 * f.d_tilde;
      tab.eta[3](i, j) = 0.0;
    }
  }
  return tab;
}

double eta_tail_sum(const EtaTable& table, int family, int k_cut) {
  if (family < 1 || family > 4) throw std::invalid_argument("eta_tail_sum: family in 1..4");
  if (k_cut < 1 || k_cut > table.n_sites)
    throw std::invalid_argument("eta_tail_sum: k_cut in 1..n_sites");
  const int k0 = k_cut - 1;  // 0-based cut site
  double acc = 0.0;
  for (int i = 0; i <= k0; ++i)
    for (int j = std::max(i, k0); j < table.n_sites; ++j)
      acc += std::abs(table.eta[family - 1](i, j));
  return acc;
}

Eigen::MatrixXcd reconstruct_generator_density(const EtaTable& table) {
  const int n = table.n_sites;
  if (n > 14) throw std::invalid_argument("reconstruct_generator_density: n_sites too large");
  const std::int64_t dim = std::int64_t(1) << n;
  Eigen::MatrixXcd g = double(n) * Eigen::MatrixXcd::Identity(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double e1 = table.eta[0](i, j);
      const double e2 = table.eta[1](i, j);
      const double e3 = table.eta[2](i, j);
      const double e4 = table.eta[3](i, j);
      if (e1 != 0.0) {
        const Eigen::MatrixXcd m = realize_string(jw_string(MonomialKind::CdagC, i, j), n);
        g += e1 * (m + m.adjoint()).eval();
      }
      if (e2 != 0.0) {
        const Eigen::MatrixXcd m = realize_string(jw_string(MonomialKind::CCdag, i, j), n);
        g += e2 * (m + m.adjoint()).eval();
      }
      if (i < j) {
        if (e3 != 0.0) {
          const Eigen::MatrixXcd m = realize_string(jw_string(MonomialKind::CdagCdag, i, j), n);
          g += e3 * (m + m.adjoint()).eval();
        }
        if (e4 != 0.0) {
          const Eigen::MatrixXcd m = realize_string(jw_string(MonomialKind::CdagCdag, i, j), n);
          g += e4 * (cplx(0.0, 1.0) * (m - m.adjoint())).eval();
        }
      }
    }
  }
  return g;
}

}  // namespace qfisim::ff
