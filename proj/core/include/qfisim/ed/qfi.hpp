#pragma once

#include <utility>
#include <vector>

#include "qfisim/ed/eigensystem.hpp"
#include "qfisim/model.hpp"
#include "qfisim/state.hpp"

namespace qfisim::ed {

struct QfiRecord {
  double t = 0.0;
  double qfi = 0.0;            // I(t) = 4 Var[G(t)]
  double gamma = 0.0;          // Gamma(t) = 2 sqrt(Var([dH](t) in the Heisenberg picture))
  double sqrt_qfi_rate = 0.0;  // finite-difference d sqrt(I)/dt
  double bound_slack = 0.0;    // gamma - sqrt_qfi_rate
};

struct CovarianceMap {
  double t = 0.0;
  Eigen::MatrixXd matrix;  // symmetrized covariances of the evolved local terms
};

struct GrowthBoundReport {
  std::vector<QfiRecord> records;
  double tol_rate = 0.0;  // documented finite-difference tolerance for this grid
  bool all_within(double extra_tol) const;
};

struct SaturationResidual {
  double collinearity = 0.0;  // in [0,1]; 0 iff the growth bound is saturated at t
  bool phase_ok = false;
};

// Caches the one-time eigenbasis rotation M = V^dagger dH V so that every
// per-(psi, t) quantity below costs O(dim^2). This is the engine's main
// performance lever: one diagonalization serves a whole t-grid.
class Engine {
 public:
  Engine(EigenDecomposition eig, const SparseOperator& dH);

  const EigenDecomposition& eigensystem() const { return eig_; }

  Eigen::VectorXcd to_eigenbasis(const StateVector& psi) const;

  // All take a unit-norm w = V^dagger psi0 (use to_eigenbasis once per state).
  double qfi(const Eigen::VectorXcd& w, double t) const;
  double gamma(const Eigen::VectorXcd& w, double t) const;
  double long_time_qfi_density(const Eigen::VectorXcd& w) const;
  SaturationResidual saturation_residual(const Eigen::VectorXcd& w, double t) const;

  // Both Gamma forms: (Heisenberg-picture variance over psi0, variance of the
  // sparse dH over the evolved state). Computed through independent
  // arithmetic paths as a unitarity witness.
  std::pair<double, double> gamma_both_forms(const StateVector& psi, double t) const;

  // G(t) realized in the computational basis (O(dim^3); for tests/small N).
  SparseOperator generator(double t) const;

  CovarianceMap covariance_map(const std::vector<SparseOperator>& terms,
                               const StateVector& psi, double t) const;

  GrowthBoundReport verify_growth_bound(const StateVector& psi,
                                        const std::vector<double>& t_grid) const;

 private:
  EigenDecomposition eig_;
  SparseOperator dh_;
  Eigen::MatrixXd mr_;   // V^T dH V when both are real
  Eigen::MatrixXcd mc_;  // general path
  bool real_m_ = false;

  Eigen::VectorXcd apply_m(const Eigen::VectorXcd& x) const;
  Eigen::VectorXcd apply_g_tilde(const Eigen::VectorXcd& w, double t) const;
};

// Single-call free functions. Each builds the eigenbasis rotation on the fly
// (O(dim^3)); prefer Engine when evaluating many (psi, t) points.
SparseOperator generator(const EigenDecomposition& eig, const SparseOperator& dH, double t);
double qfi(const SparseOperator& G, const StateVector& psi);
double gamma_rate(const EigenDecomposition& eig, const SparseOperator& dH,
                  const StateVector& psi, double t);
GrowthBoundReport verify_growth_bound(const EigenDecomposition& eig, const SparseOperator& dH,
                                      const StateVector& psi, const std::vector<double>& t_grid);
CovarianceMap covariance_map(const EigenDecomposition& eig,
                             const std::vector<SparseOperator>& terms,
                             const StateVector& psi, double t);
double long_time_qfi_density(const EigenDecomposition& eig, const SparseOperator& dH,
                             const StateVector& psi);
SaturationResidual saturation_residual(const EigenDecomposition& eig, const SparseOperator& dH,
                                       const StateVector& psi, double t);

// Gamma/(2 sqrt(N)) across system sizes at fixed (theta, phi, t); the
// shot-noise-limit monitor. model.n_sites is overridden by each N, so CUSTOM
// models (whose terms are tied to one length) are rejected.
std::vector<std::pair<int, double>> snl_gamma_monitor(const ModelSpec& model,
                                                      const std::vector<int>& n_list,
                                                      double theta, double phi, double t);

}  // namespace qfisim::ed
