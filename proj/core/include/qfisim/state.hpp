#pragma once

#include <Eigen/Dense>

namespace qfisim {

using StateVector = Eigen::VectorXcd;

// Uniform spin-coherent product state: per site cos(theta/2)|up> + sin(theta/2) e^{i phi}|down>.
struct ProductStateSpec {
  int n_sites = 0;
  double theta = 0.0;
  double phi = 0.0;
};

// Tensor power of the single-site spinor. theta=0 gives exactly the all-up
// basis vector (index 0); theta=pi, phi=0 gives all-down (index 2^n - 1).
StateVector realize_product_state(const ProductStateSpec& s);

}  // namespace qfisim
