#include "qfisim/ed/qfi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "finite_difference.hpp"

namespace qfisim::ed {

namespace {

Eigen::VectorXcd unit_phases(const Eigen::VectorXd& e, double t) {
  Eigen::VectorXcd p(e.size());
  for (std::int64_t n = 0; n < e.size(); ++n) p[n] = std::polar(1.0, e[n] * t);
  return p;
}

void check_unit_norm(const Eigen::VectorXcd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("state must have unit norm");
}

void check_time(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
}

// 4*(second_moment - mean^2), clamped at zero for rounding-level negatives.
double clamped_4var(double second_moment, double mean) {
  double v = 4.0 * (second_moment - mean * mean);
  if (v < 0.0) {
    if (v < -1e-9)
      throw NumericalInvariantError("variance evaluated significantly negative");
    v = 0.0;
  }
  return v;
}

// Half-open index ranges of quasi-degenerate levels in the sorted spectrum,
// chained through adjacency: |E_{i} - E_{i-1}| <= tol keeps extending a block.
std::vector<std::pair<std::int64_t, std::int64_t>> degenerate_clusters(const Eigen::VectorXd& e,
                                                                       double tol) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t lo = 0;
  for (std::int64_t i = 1; i <= e.size(); ++i) {
    if (i == e.size() || e[i] - e[i - 1] > tol) {
      out.emplace_back(lo, i);
      lo = i;
    }
  }
  return out;
}

}  // namespace

bool GrowthBoundReport::all_within(double extra_tol) const {
  for (const auto& r : records)
    if (r.bound_slack < -(tol_rate + extra_tol)) return false;
  return true;
}

Engine::Engine(EigenDecomposition eig, const SparseOperator& dH)
    : eig_(std::move(eig)), dh_(dH) {
  if (dh_.dim() != eig_.dim())
    throw std::invalid_argument("Engine: dimension mismatch between spectrum and dH");
  if (dh_.hermiticity_residual() > 1e-12 * std::max(1.0, dh_.norm_max()))
    throw std::invalid_argument("Engine: dH is not Hermitian");
  if (eig_.real_basis() && dh_.is_real()) {
    real_m_ = true;
    Eigen::SparseMatrix<double> dhr = dh_.matrix().real();
    const Eigen::MatrixXd& v = eig_.vectors_real();
    Eigen::MatrixXd tmp = dhr * v;
    mr_.noalias() = v.transpose() * tmp;
  } else {
    Eigen::MatrixXcd v = eig_.vectors();
    Eigen::MatrixXcd tmp = dh_.matrix() * v;
    mc_.noalias() = v.adjoint() * tmp;
  }
}

Eigen::VectorXcd Engine::to_eigenbasis(const StateVector& psi) const {
  if (psi.size() != eig_.dim())
    throw std::invalid_argument("Engine: state dimension mismatch");
  return eig_.to_eigenbasis(psi);
}

Eigen::VectorXcd Engine::apply_m(const Eigen::VectorXcd& x) const {
  if (real_m_) {
    Eigen::VectorXcd out(x.size());
    out.real() = mr_ * x.real();
    out.imag() = mr_ * x.imag();
    return out;
  }
  return mc_ * x;
}

// (G(t) in the eigenbasis) * w: kernel K_mn = (e^{i(E_m-E_n)t} - 1)/(i(E_m-E_n)),
// with K -> t on quasi-degenerate pairs. Row loop keeps this O(dim^2) with a
// single phase table.
Eigen::VectorXcd Engine::apply_g_tilde(const Eigen::VectorXcd& w, double t) const {
  const Eigen::VectorXd& e = eig_.energies();
  const std::int64_t dim = e.size();
  const double tol = eig_.tol_deg();
  const Eigen::VectorXcd phi = unit_phases(e, t);
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(dim);
  for (std::int64_t m = 0; m < dim; ++m) {
    const cplx pm = phi[m];
    const double em = e[m];
    cplx acc(0.0, 0.0);
    for (std::int64_t n = 0; n < dim; ++n) {
      // Hermitian M: row m read from column m (contiguous in column-major).
      const cplx mmn = real_m_ ? cplx(mr_(n, m), 0.0) : std::conj(mc_(n, m));
      const double de = em - e[n];
      cplx k;
      if (std::abs(de) <= tol) {
        k = cplx(t, 0.0);
      } else {
        const cplx num = pm * std::conj(phi[n]) - 1.0;  // (a+bi)/(i de) = (b-ai)/de
        k = cplx(num.imag() / de, -num.real() / de);
      }
      acc += k * mmn * w[n];
    }
    g[m] = acc;
  }
  return g;
}

double Engine::qfi(const Eigen::VectorXcd& w, double t) const {
  check_time(t);
  check_unit_norm(w);
  const Eigen::VectorXcd g = apply_g_tilde(w, t);
  const double mean = w.dot(g).real();
  return clamped_4var(g.squaredNorm(), mean);
}

double Engine::gamma(const Eigen::VectorXcd& w, double t) const {
  check_time(t);
  check_unit_norm(w);
  const Eigen::VectorXcd phi = unit_phases(eig_.energies(), t);
  const Eigen::VectorXcd wt = phi.conjugate().cwiseProduct(w);  // evolved state, eigenbasis
  const Eigen::VectorXcd u = apply_m(wt);
  const double mean = wt.dot(u).real();
  return 2.0 * std::sqrt(0.25 * clamped_4var(u.squaredNorm(), mean));
}

std::pair<double, double> Engine::gamma_both_forms(const StateVector& psi, double t) const {
  check_unit_norm(psi);
  const Eigen::VectorXcd w = to_eigenbasis(psi);
  const double form1 = gamma(w, t);
  // Second form: variance of the sparse dH over the evolved state, assembled
  // entirely in the computational basis.
  const Eigen::VectorXcd phi = unit_phases(eig_.energies(), t);
  const StateVector psi_t = eig_.from_eigenbasis(phi.conjugate().cwiseProduct(w));
  const Eigen::VectorXcd y = dh_.apply(psi_t);
  const double mean = psi_t.dot(y).real();
  const double form2 = 2.0 * std::sqrt(0.25 * clamped_4var(y.squaredNorm(), mean));
  return {form1, form2};
}

double Engine::long_time_qfi_density(const Eigen::VectorXcd& w) const {
  check_unit_norm(w);
  const Eigen::VectorXd& e = eig_.energies();
  const std::int64_t dim = e.size();
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(dim);
  for (const auto& [lo, hi] : degenerate_clusters(e, eig_.tol_deg())) {
    const std::int64_t len = hi - lo;
    const Eigen::VectorXcd seg = w.segment(lo, len);
    Eigen::VectorXcd out(len);
    if (real_m_) {
      out.real() = mr_.block(lo, lo, len, len) * seg.real();
      out.imag() = mr_.block(lo, lo, len, len) * seg.imag();
    } else {
      out = mc_.block(lo, lo, len, len) * seg;
    }
    d.segment(lo, len) = out;
  }
  const double mean = w.dot(d).real();
  return clamped_4var(d.squaredNorm(), mean);
}

SaturationResidual Engine::saturation_residual(const Eigen::VectorXcd& w, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("saturation_residual: t must be positive");
  check_unit_norm(w);
  const Eigen::VectorXcd g = apply_g_tilde(w, t);
  Eigen::VectorXcd phi0 = g - cplx(w.dot(g).real(), 0.0) * w;

  const Eigen::VectorXcd phases = unit_phases(eig_.energies(), t);
  const Eigen::VectorXcd wt = phases.conjugate().cwiseProduct(w);
  const Eigen::VectorXcd z = phases.cwiseProduct(apply_m(wt));  // dH^(H)(t) w
  Eigen::VectorXcd phidot0 = z - cplx(w.dot(z).real(), 0.0) * w;

  const double n0 = phi0.norm();
  const double n1 = phidot0.norm();
  // A vanishing component means the bound is (trivially) saturated at t.
  if (n0 < 1e-14 || n1 < 1e-14) return {0.0, true};

  const cplx ip = phidot0.dot(phi0);
  double coll = 1.0 - std::norm(ip) / (n0 * n0 * n1 * n1);
  coll = std::clamp(coll, 0.0, 1.0);
  const double scale = n0 * n1;
  const bool phase_ok = std::abs(ip.imag()) <= 1e-10 * scale && ip.real() >= -1e-10 * scale;
  return {coll, phase_ok};
}

SparseOperator Engine::generator(double t) const {
  check_time(t);
  const Eigen::VectorXd& e = eig_.energies();
  const std::int64_t dim = e.size();
  const double tol = eig_.tol_deg();
  const Eigen::VectorXcd phi = unit_phases(e, t);
  Eigen::MatrixXcd gt(dim, dim);
  for (std::int64_t n = 0; n < dim; ++n) {
    for (std::int64_t m = 0; m < dim; ++m) {
      const cplx mmn = real_m_ ? cplx(mr_(m, n), 0.0) : mc_(m, n);
      const double de = e[m] - e[n];
      cplx k;
      if (std::abs(de) <= tol) {
        k = cplx(t, 0.0);
      } else {
        const cplx num = phi[m] * std::conj(phi[n]) - 1.0;
        k = cplx(num.imag() / de, -num.real() / de);
      }
      gt(m, n) = k * mmn;
    }
  }
  Eigen::MatrixXcd v = eig_.vectors();
  Eigen::MatrixXcd full = v * gt * v.adjoint();
  full = (0.5 * (full + full.adjoint())).eval();  // exact Hermiticity of the result
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(dim) * dim);
  for (std::int64_t c = 0; c < dim; ++c)
    for (std::int64_t r = 0; r < dim; ++r)
      if (full(r, c) != cplx(0.0, 0.0)) trips.emplace_back(int(r), int(c), full(r, c));
  return SparseOperator(dim, trips);
}

CovarianceMap Engine::covariance_map(const std::vector<SparseOperator>& terms,
                                     const StateVector& psi, double t) const {
  check_time(t);
  check_unit_norm(psi);
  const std::size_t nt = terms.size();
  if (nt == 0) throw std::invalid_argument("covariance_map: empty term list");
  for (const auto& h : terms)
    if (h.dim() != eig_.dim())
      throw std::invalid_argument("covariance_map: term dimension mismatch");

  const Eigen::VectorXcd w = to_eigenbasis(psi);
  const Eigen::VectorXcd phi = unit_phases(eig_.energies(), t);
  const StateVector psi_t = eig_.from_eigenbasis(phi.conjugate().cwiseProduct(w));

  std::vector<Eigen::VectorXcd> y(nt);
  Eigen::VectorXd a(nt);
  for (std::size_t j = 0; j < nt; ++j) {
    y[j] = terms[j].apply(psi_t);
    a[j] = psi_t.dot(y[j]).real();
  }
  CovarianceMap map;
  map.t = t;
  map.matrix.resize(nt, nt);
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t k = j; k < nt; ++k) {
      const double c = y[j].dot(y[k]).real() - a[j] * a[k];
      map.matrix(j, k) = c;
      map.matrix(k, j) = c;
    }

  // The terms decompose dH, so four times the total covariance must equal
  // Gamma^2; treat disagreement as an internal numerical fault.
  const double g = gamma(w, t);
  const double total = 4.0 * map.matrix.sum();
  if (std::abs(total - g * g) > 1e-8 * std::max(g * g, 1e-12))
    throw NumericalInvariantError("covariance map total disagrees with squared growth rate");
  return map;
}

GrowthBoundReport Engine::verify_growth_bound(const StateVector& psi,
                                              const std::vector<double>& t_grid) const {
  if (t_grid.size() < 2)
    throw std::invalid_argument("verify_growth_bound: need at least two grid points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0))
      throw std::invalid_argument("verify_growth_bound: grid must be nonnegative");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("verify_growth_bound: grid must be strictly increasing");
  }
  check_unit_norm(psi);
  const Eigen::VectorXcd w = to_eigenbasis(psi);
  const std::size_t n = t_grid.size();
  std::vector<double> qfis(n), gammas(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    qfis[i] = qfi(w, t_grid[i]);
    gammas[i] = gamma(w, t_grid[i]);
    s[i] = std::sqrt(qfis[i]);
  }
  const std::vector<double> rate = qfisim::detail::lagrange_derivative(t_grid, s);

  GrowthBoundReport report;
  report.tol_rate = qfisim::detail::estimate_tol_rate(t_grid, s);
  report.records.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    QfiRecord& r = report.records[i];
    r.t = t_grid[i];
    r.qfi = qfis[i];
    r.gamma = gammas[i];
    if (qfis[i] < qfisim::detail::kQfiNoiseFloor) {
      // sqrt(I) ~ Gamma * t near I = 0; the finite difference of noise-level
      // values is meaningless there, so the rate is pinned to its series value.
      r.sqrt_qfi_rate = gammas[i];
      r.bound_slack = 0.0;
    } else {
      r.sqrt_qfi_rate = rate[i];
      r.bound_slack = gammas[i] - rate[i];
    }
  }
  return report;
}

SparseOperator generator(const EigenDecomposition& eig, const SparseOperator& dH, double t) {
  return Engine(eig, dH).generator(t);
}

double qfi(const SparseOperator& G, const StateVector& psi) {
  check_unit_norm(psi);
  if (G.dim() != psi.size()) throw std::invalid_argument("qfi: dimension mismatch");
  const Eigen::VectorXcd y = G.apply(psi);
  const double mean = psi.dot(y).real();
  return clamped_4var(y.squaredNorm(), mean);
}

double gamma_rate(const EigenDecomposition& eig, const SparseOperator& dH,
                  const StateVector& psi, double t) {
  check_time(t);
  const auto [form1, form2] = Engine(eig, dH).gamma_both_forms(psi, t);
  if (std::abs(form1 - form2) > 1e-10 * std::max(1.0, std::abs(form1)))
    throw NumericalInvariantError("growth-rate forms disagree (unitarity witness tripped)");
  return form1;
}

GrowthBoundReport verify_growth_bound(const EigenDecomposition& eig, const SparseOperator& dH,
                                      const StateVector& psi, const std::vector<double>& t_grid) {
  return Engine(eig, dH).verify_growth_bound(psi, t_grid);
}

CovarianceMap covariance_map(const EigenDecomposition& eig,
                             const std::vector<SparseOperator>& terms,
                             const StateVector& psi, double t) {
  if (terms.empty()) throw std::invalid_argument("covariance_map: empty term list");
  SparseOperator dh = terms.front();
  for (std::size_t j = 1; j < terms.size(); ++j) dh += terms[j];
  return Engine(eig, dh).covariance_map(terms, psi, t);
}

double long_time_qfi_density(const EigenDecomposition& eig, const SparseOperator& dH,
                             const StateVector& psi) {
  check_unit_norm(psi);
  Engine eng(eig, dH);
  return eng.long_time_qfi_density(eng.to_eigenbasis(psi));
}

SaturationResidual saturation_residual(const EigenDecomposition& eig, const SparseOperator& dH,
                                       const StateVector& psi, double t) {
  check_unit_norm(psi);
  Engine eng(eig, dH);
  return eng.saturation_residual(eng.to_eigenbasis(psi), t);
}

std::vector<std::pair<int, double>> snl_gamma_monitor(const ModelSpec& model,
                                                      const std::vector<int>& n_list,
                                                      double theta, double phi, double t) {
  if (model.family == ModelFamily::CUSTOM)
    throw std::invalid_argument(
        "snl_gamma_monitor: custom terms are tied to one chain length and cannot sweep");
  std::vector<std::pair<int, double>> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    if (n < 1 || n > kMaxEdSites)
      throw std::invalid_argument("snl_gamma_monitor: system size out of range");
    ModelSpec m = model;
    m.n_sites = n;
    const HamiltonianPair hp = build_hamiltonian(m);
    Engine eng(eigendecompose(hp.H), hp.dH);
    const StateVector psi = realize_product_state({n, theta, phi});
    const double g = eng.gamma(eng.to_eigenbasis(psi), t);
    out.emplace_back(n, g / (2.0 * std::sqrt(double(n))));
  }
  return out;
}

}  // namespace qfisim::ed
