#include "qfisim/ed/eigensystem.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#ifdef QFISIM_USE_LAPACKE
#include <lapacke.h>
#endif

namespace qfisim::ed {

Eigen::MatrixXcd EigenDecomposition::vectors() const {
  if (real_basis_) return vr_.cast<cplx>();
  return vc_;
}

Eigen::VectorXcd EigenDecomposition::to_eigenbasis(const Eigen::VectorXcd& psi) const {
  if (real_basis_) return vr_.transpose() * psi;
  return vc_.adjoint() * psi;
}

Eigen::VectorXcd EigenDecomposition::from_eigenbasis(const Eigen::VectorXcd& x) const {
  if (real_basis_) return vr_ * x;
  return vc_ * x;
}

namespace {

#ifdef QFISIM_USE_LAPACKE
bool lapack_syevd(Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  return LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data()) == 0;
}

bool lapack_heevd(Eigen::MatrixXcd& a, Eigen::VectorXd& w) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  return LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data()) == 0;
}
#endif

double smallest_resolved_gap(const Eigen::VectorXd& e, double tol) {
  // Energies come back sorted; the smallest resolved gap is attained between
  // adjacent distinct levels.
  double best = 0.0;
  bool found = false;
  for (std::int64_t i = 0; i + 1 < e.size(); ++i) {
    const double g = e[i + 1] - e[i];
    if (g > tol && (!found || g < best)) {
      best = g;
      found = true;
    }
  }
  return found ? best : 0.0;
}

}  // namespace

EigenDecomposition eigendecompose(const SparseOperator& H) {
  const std::int64_t dim = H.dim();
  if (dim < 1 || dim > (std::int64_t(1) << kMaxEdSites))
    throw std::invalid_argument("eigendecompose: dimension out of supported range");
  const double hmax = H.norm_max();
  const double herm = H.hermiticity_residual();
  if (herm > 1e-12 * std::max(1.0, hmax))
    throw std::invalid_argument("eigendecompose: operator is not Hermitian");

  EigenDecomposition d;
  d.tol_deg_ = 1e-9 * hmax;
  d.energies_.resize(dim);

  if (H.is_real()) {
    d.real_basis_ = true;
    Eigen::MatrixXd a = H.to_dense().real();
    a = 0.5 * (a + a.transpose()).eval();  // strip the tiny asymmetry the residual allowed
    bool done = false;
#ifdef QFISIM_USE_LAPACKE
    done = lapack_syevd(a, d.energies_);
    if (done) d.vr_ = std::move(a);
#endif
    if (!done) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s(a);
      if (s.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: real solver failed to converge");
      d.energies_ = s.eigenvalues();
      d.vr_ = s.eigenvectors();
    }
  } else {
    Eigen::MatrixXcd a = H.to_dense();
    a = (0.5 * (a + a.adjoint())).eval();
    bool done = false;
#ifdef QFISIM_USE_LAPACKE
    done = lapack_heevd(a, d.energies_);
    if (done) d.vc_ = std::move(a);
#endif
    if (!done) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s(a);
      if (s.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: complex solver failed to converge");
      d.energies_ = s.eigenvalues();
      d.vc_ = s.eigenvectors();
    }
  }

  d.min_gap_ = smallest_resolved_gap(d.energies_, d.tol_deg_);
  return d;
}

}  // namespace qfisim::ed
