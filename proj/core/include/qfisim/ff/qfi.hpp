#pragma once

#include "qfisim/ff/eta.hpp"

namespace qfisim::ff {

inline constexpr int kMaxFfSites = 64;  // O(N^5) string algorithm cap

// I(t) = 4 Var[G(t)] over the uniform product state, computed entirely from
// Jordan-Wigner string expectations (no 2^N object). Exact against ED for
// even-parity states (theta = 0); general theta is the antiperiodic-sector
// approximation (exact as N -> inf). N even, 4 <= N <= 64.
double qfi_product_state_ff(double J, double lambda, double t, int n_sites,
                            double theta, double phi);

// Gamma(t) = 2 sqrt(Var([dH](t))) through the same string machinery with the
// instantaneous kernels. Same sector caveat.
double gamma_product_state_ff(double J, double lambda, double t, int n_sites,
                              double theta, double phi);

}  // namespace qfisim::ff
