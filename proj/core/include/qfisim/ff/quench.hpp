#pragma once

#include <optional>
#include <string>

namespace qfisim::ff {

// Quench protocol: the chain is prepared in the ground state at transverse
// field lambda_star, then sensed at field lambda. lambda_star == nullopt is
// the +infinity sentinel (fully polarized preparation); kept explicit rather
// than a float infinity so branch selection stays readable.
struct QuenchSpec {
  double J = 0.0;
  double lambda = 0.0;
  std::optional<double> lambda_star;  // nullopt = +infinity
};

// Finite-N momentum-sum form of lim_{t->inf} I(t) / (N t^2):
//   (8 J^2 (lambda - lambda_star)^2 / N) * sum_k (lambda - J cos k)^2 sin^2 k
//     / [ (J^2 + lambda^2 - 2 lambda J cos k)^2 (J^2 + lambda_star^2 - 2 lambda_star J cos k) ].
// For lambda_star = inf the factor (lambda - lambda_star)^2 / (J^2 +
// lambda_star^2 - 2 lambda_star J cos k) tends to 1 and is dropped. Requires
// even N. Converges exponentially in N for off-critical parameters.
double quench_asymptote_ksum(const QuenchSpec& q, int n_sites);

struct QuenchAsymptote {
  double value = 0.0;
  std::string branch;  // ferro_ferro, para_para, para_ferro, ferro_para, para_inf, ferro_inf
};

// Residue-theorem closed form of the same limit; selects among the four
// finite-lambda_star parameter branches or the two lambda_star = inf forms.
// Rejects on-critical input (lambda = J or lambda_star = J).
QuenchAsymptote quench_asymptote_closed(const QuenchSpec& q);

}  // namespace qfisim::ff
