#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfisim/pauli.hpp"

namespace qfisim {

enum class ModelFamily { TFI_PERIODIC, CHAOTIC_ISING_OPEN, LONG_RANGE_ISING, CUSTOM };

std::string to_string(ModelFamily f);
std::optional<ModelFamily> model_family_from_string(const std::string& s);

// Declarative description of a chain Hamiltonian H_lambda = H_1 - lambda sum_i sigma_i^z.
//
//   TFI_PERIODIC:       H = -J sum_{i=1..N} X_i X_{i+1} - lambda sum Z_i   (X_{N+1} = X_1;
//                       at N=2 the literal bond sum doubles the single physical bond)
//   CHAOTIC_ISING_OPEN: H = -J sum_{i=1..N-1} X_i X_{i+1} - h sum X_i - lambda sum Z_i
//   LONG_RANGE_ISING:   H = -J sum_{i<j} X_i X_j / |i-j|^alpha - lambda sum Z_i
//   CUSTOM:             H = sum(custom_terms) - lambda sum Z_i
//
// The sensing derivative dH = -sum_i sigma_i^z for every family.
struct ModelSpec {
  ModelFamily family = ModelFamily::TFI_PERIODIC;
  int n_sites = 0;
  std::map<std::string, double> couplings;  // J, h, lambda, alpha_exponent as applicable
  std::vector<PauliString> custom_terms;    // only for CUSTOM

  double coupling(const std::string& name) const;  // throws if missing
  bool has_coupling(const std::string& name) const;
};

struct HamiltonianPair {
  SparseOperator H;
  SparseOperator dH;
};

// Builds H and dH = -sum sigma_z. Throws std::invalid_argument on missing
// couplings, bad sizes, or CUSTOM with empty/complex-coefficient terms.
HamiltonianPair build_hamiltonian(const ModelSpec& m);

// The N single-site terms h_i = -sigma_i^z whose sum equals dH.
std::vector<SparseOperator> local_sensing_terms(const ModelSpec& m);

}  // namespace qfisim
