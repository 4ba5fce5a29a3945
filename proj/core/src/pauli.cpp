#include "qfisim/pauli.hpp"

#include <cstdint>

namespace qfisim {

SparseOperator::SparseOperator(std::int64_t dim, const std::vector<Eigen::Triplet<cplx>>& entries) {
  mat_.resize(dim, dim);
  mat_.setFromTriplets(entries.begin(), entries.end());
  mat_.makeCompressed();
}

double SparseOperator::hermiticity_residual() const {
  Eigen::SparseMatrix<cplx> d = Eigen::SparseMatrix<cplx>(mat_.adjoint()) - mat_;
  double r = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(d, k); it; ++it)
      r = std::max(r, std::abs(it.value()));
  return r;
}

double SparseOperator::norm_max() const {
  double r = 0.0;
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(mat_, k); it; ++it)
      r = std::max(r, std::abs(it.value()));
  return r;
}

bool SparseOperator::is_real(double tol) const {
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (Eigen::SparseMatrix<cplx>::InnerIterator it(mat_, k); it; ++it)
      if (std::abs(it.value().imag()) > tol) return false;
  return true;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  if (other.dim() != dim()) throw std::invalid_argument("SparseOperator: dimension mismatch in +=");
  mat_ += other.mat_;
  mat_.makeCompressed();
  return *this;
}

SparseOperator operator*(cplx scale, const SparseOperator& op) {
  SparseOperator out;
  out.mat_ = scale * op.mat_;
  return out;
}

void append_pauli_triplets(const PauliString& p, std::vector<Eigen::Triplet<cplx>>& out) {
  if (p.n_sites <= 0) throw std::invalid_argument("PauliString: n_sites must be positive");
  for (const auto& [site, axis] : p.factors) {
    if (site < 0 || site >= p.n_sites)
      throw std::invalid_argument("PauliString: site index out of range");
    (void)axis;
  }
  const std::int64_t dim = std::int64_t(1) << p.n_sites;

  // Site s maps to bit (n_sites - 1 - s): site 0 is the most significant bit,
  // so basis index 0 is the all-up state.
  std::int64_t flip_mask = 0;
  for (const auto& [site, axis] : p.factors)
    if (axis != PauliAxis::Z) flip_mask |= std::int64_t(1) << (p.n_sites - 1 - site);

  out.reserve(out.size() + std::size_t(dim));
  for (std::int64_t col = 0; col < dim; ++col) {
    cplx amp = p.coefficient;
    for (const auto& [site, axis] : p.factors) {
      const int bit = int((col >> (p.n_sites - 1 - site)) & 1);  // 0 = up, 1 = down
      switch (axis) {
        case PauliAxis::X: break;                                   // |b> -> |1-b>
        case PauliAxis::Y: amp *= bit ? cplx(0, -1) : cplx(0, 1); break;
        case PauliAxis::Z: amp *= bit ? -1.0 : 1.0; break;
      }
    }
    out.emplace_back(int(col ^ flip_mask), int(col), amp);
  }
}

SparseOperator realize_pauli_string(const PauliString& p) {
  std::vector<Eigen::Triplet<cplx>> trips;
  append_pauli_triplets(p, trips);
  return SparseOperator(std::int64_t(1) << p.n_sites, trips);
}

}  // namespace qfisim
