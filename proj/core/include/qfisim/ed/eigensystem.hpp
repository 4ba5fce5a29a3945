#pragma once

#include <Eigen/Dense>

#include "qfisim/pauli.hpp"

namespace qfisim::ed {

// Full spectrum of a Hermitian operator. Real-symmetric inputs (all named
// model families: only X/XX/Z terms) take a dsyevd fast path and keep the
// eigenvector matrix real, which roughly quarters the diagonalization cost
// and halves the memory of everything downstream.
class EigenDecomposition {
 public:
  EigenDecomposition() = default;

  const Eigen::VectorXd& energies() const { return energies_; }
  // Smallest |E_m - E_n| exceeding tol_deg over all pairs.
  double min_gap() const { return min_gap_; }
  // Degeneracy tolerance: 1e-9 * max|H_ij|.
  double tol_deg() const { return tol_deg_; }
  std::int64_t dim() const { return energies_.size(); }
  bool real_basis() const { return real_basis_; }

  // Unitary eigenvector matrix (columns). Materializes a complex copy on the
  // real path; intended for tests and small systems.
  Eigen::MatrixXcd vectors() const;
  const Eigen::MatrixXd& vectors_real() const { return vr_; }
  const Eigen::MatrixXcd& vectors_complex() const { return vc_; }

  // V^dagger psi
  Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& psi) const;
  // V x
  Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& x) const;

  friend EigenDecomposition eigendecompose(const SparseOperator& H);

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vr_;   // real path
  Eigen::MatrixXcd vc_;  // complex path
  bool real_basis_ = false;
  double min_gap_ = 0.0;
  double tol_deg_ = 0.0;
};

// Dense full diagonalization (LAPACK dsyevd/zheevd when available). Throws on
// non-Hermitian input or dim > 2^14.
EigenDecomposition eigendecompose(const SparseOperator& H);

inline constexpr int kMaxEdSites = 14;

}  // namespace qfisim::ed
