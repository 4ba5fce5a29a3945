#include "qfisim/model.hpp"

#include <cmath>

namespace qfisim {

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::TFI_PERIODIC: return "TFI_PERIODIC";
    case ModelFamily::CHAOTIC_ISING_OPEN: return "CHAOTIC_ISING_OPEN";
    case ModelFamily::LONG_RANGE_ISING: return "LONG_RANGE_ISING";
    case ModelFamily::CUSTOM: return "CUSTOM";
  }
  return "?";
}

std::optional<ModelFamily> model_family_from_string(const std::string& s) {
  if (s == "TFI_PERIODIC") return ModelFamily::TFI_PERIODIC;
  if (s == "CHAOTIC_ISING_OPEN") return ModelFamily::CHAOTIC_ISING_OPEN;
  if (s == "LONG_RANGE_ISING") return ModelFamily::LONG_RANGE_ISING;
  if (s == "CUSTOM") return ModelFamily::CUSTOM;
  return std::nullopt;
}

double ModelSpec::coupling(const std::string& name) const {
  auto it = couplings.find(name);
  if (it == couplings.end())
    throw std::invalid_argument("ModelSpec: missing required coupling '" + name + "' for family " +
                                to_string(family));
  return it->second;
}

bool ModelSpec::has_coupling(const std::string& name) const {
  return couplings.count(name) != 0;
}

namespace {

PauliString xx(int n, int i, int j, double coeff) {
  return {n, {{i, PauliAxis::X}, {j, PauliAxis::X}}, cplx(coeff, 0)};
}

PauliString x1(int n, int i, double coeff) { return {n, {{i, PauliAxis::X}}, cplx(coeff, 0)}; }
PauliString z1(int n, int i, double coeff) { return {n, {{i, PauliAxis::Z}}, cplx(coeff, 0)}; }

void check_sites(const ModelSpec& m, int minimum) {
  if (m.n_sites < minimum)
    throw std::invalid_argument("ModelSpec: family " + to_string(m.family) + " needs n_sites >= " +
                                std::to_string(minimum));
}

std::vector<PauliString> hamiltonian_terms(const ModelSpec& m) {
  const int n = m.n_sites;
  std::vector<PauliString> terms;
  switch (m.family) {
    case ModelFamily::TFI_PERIODIC: {
      check_sites(m, 2);
      const double J = m.coupling("J"), lam = m.coupling("lambda");
      // The literal bond sum i = 1..N wraps; at N=2 it double-counts the one
      // physical bond (coefficient 2J), kept as the family's convention.
      for (int i = 0; i < n; ++i) terms.push_back(xx(n, i, (i + 1) % n, -J));
      for (int i = 0; i < n; ++i) terms.push_back(z1(n, i, -lam));
      break;
    }
    case ModelFamily::CHAOTIC_ISING_OPEN: {
      check_sites(m, 2);
      const double J = m.coupling("J"), h = m.coupling("h"), lam = m.coupling("lambda");
      for (int i = 0; i + 1 < n; ++i) terms.push_back(xx(n, i, i + 1, -J));
      for (int i = 0; i < n; ++i) terms.push_back(x1(n, i, -h));
      for (int i = 0; i < n; ++i) terms.push_back(z1(n, i, -lam));
      break;
    }
    case ModelFamily::LONG_RANGE_ISING: {
      check_sites(m, 2);
      const double J = m.coupling("J"), lam = m.coupling("lambda");
      const double alpha = m.coupling("alpha_exponent");
      if (alpha < 0) throw std::invalid_argument("ModelSpec: alpha_exponent must be >= 0");
      // Open-chain distance |i-j|; no periodic images.
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          terms.push_back(xx(n, i, j, -J / std::pow(double(j - i), alpha)));
      for (int i = 0; i < n; ++i) terms.push_back(z1(n, i, -lam));
      break;
    }
    case ModelFamily::CUSTOM: {
      check_sites(m, 1);
      if (m.custom_terms.empty())
        throw std::invalid_argument("ModelSpec: CUSTOM requires nonempty custom_terms");
      const double lam = m.coupling("lambda");
      for (const auto& p : m.custom_terms) {
        if (p.n_sites != n)
          throw std::invalid_argument("ModelSpec: custom term n_sites mismatch");
        if (std::abs(p.coefficient.imag()) > 1e-12)
          throw std::invalid_argument("ModelSpec: custom term coefficients must be real");
        terms.push_back(p);
      }
      for (int i = 0; i < n; ++i) terms.push_back(z1(n, i, -lam));
      break;
    }
  }
  return terms;
}

}  // namespace

HamiltonianPair build_hamiltonian(const ModelSpec& m) {
  const std::int64_t dim = std::int64_t(1) << m.n_sites;
  std::vector<Eigen::Triplet<cplx>> ht;
  for (const auto& p : hamiltonian_terms(m)) append_pauli_triplets(p, ht);
  std::vector<Eigen::Triplet<cplx>> dt;
  for (int i = 0; i < m.n_sites; ++i)
    append_pauli_triplets(z1(m.n_sites, i, -1.0), dt);
  return {SparseOperator(dim, ht), SparseOperator(dim, dt)};
}

std::vector<SparseOperator> local_sensing_terms(const ModelSpec& m) {
  check_sites(m, 1);
  std::vector<SparseOperator> out;
  out.reserve(m.n_sites);
  for (int i = 0; i < m.n_sites; ++i)
    out.push_back(realize_pauli_string(z1(m.n_sites, i, -1.0)));
  return out;
}

}  // namespace qfisim
