#include "qfisim/state.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace qfisim {

StateVector realize_product_state(const ProductStateSpec& s) {
  if (s.n_sites < 1 || s.n_sites > 30)
    throw std::invalid_argument("realize_product_state: n_sites out of range");
  const std::complex<double> up(std::cos(s.theta / 2.0), 0.0);
  const std::complex<double> dn =
      std::sin(s.theta / 2.0) * std::complex<double>(std::cos(s.phi), std::sin(s.phi));
  const std::int64_t dim = std::int64_t(1) << s.n_sites;
  StateVector psi(dim);
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    std::complex<double> amp(1.0, 0.0);
    for (int site = 0; site < s.n_sites; ++site)
      amp *= ((idx >> (s.n_sites - 1 - site)) & 1) ? dn : up;
    psi[idx] = amp;
  }
  return psi;
}

}  // namespace qfisim
