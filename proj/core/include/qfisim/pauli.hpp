#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qfisim {

using cplx = std::complex<double>;

// Thrown when a numerical consistency check fails (unitarity witness,
// cross-engine mismatch, ...). The CLI maps it to exit code 2, as opposed to
// std::invalid_argument (bad input, exit code 1).
class NumericalInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PauliAxis : char { X = 'X', Y = 'Y', Z = 'Z' };

// Tensor product of single-site Paulis times a scalar. Sites are 0-based;
// identity sites are absent from `factors` (canonical sparse form). Site 0 is
// the most significant bit of the basis index, so basis index 0 is all-up.
struct PauliString {
  int n_sites = 0;
  std::map<int, PauliAxis> factors;
  cplx coefficient{1.0, 0.0};
};

// Coordinate-format complex matrix of dimension 2^n. Immutable after
// construction; safe to share across threads.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::int64_t dim, const std::vector<Eigen::Triplet<cplx>>& entries);

  std::int64_t dim() const { return mat_.rows(); }
  const Eigen::SparseMatrix<cplx>& matrix() const { return mat_; }
  Eigen::MatrixXcd to_dense() const { return Eigen::MatrixXcd(mat_); }

  // max_ij |M - M^dagger|
  double hermiticity_residual() const;
  // max_ij |M_ij|
  double norm_max() const;
  // True when every stored entry has |imag| < tol (the real-symmetric
  // eigensolver fast path applies).
  bool is_real(double tol = 1e-12) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

  SparseOperator& operator+=(const SparseOperator& other);
  friend SparseOperator operator*(cplx scale, const SparseOperator& op);

 private:
  Eigen::SparseMatrix<cplx> mat_;
};

// Dense 2^n tensor-product realization of a PauliString; identity on unlisted
// sites. One nonzero per column.
SparseOperator realize_pauli_string(const PauliString& p);

// Triplet form of the same realization, for accumulating sums of strings
// without repeated sparse-matrix additions.
void append_pauli_triplets(const PauliString& p, std::vector<Eigen::Triplet<cplx>>& out);

}  // namespace qfisim
