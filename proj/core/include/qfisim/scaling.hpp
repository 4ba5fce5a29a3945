#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qfisim {

struct ScalingFit {
  double alpha = 0.0;          // fitted exponent of I ~ N^alpha
  double alpha_stderr = 0.0;
  double log_prefactor = 0.0;  // intercept of the log-log fit
  double r_squared = 0.0;
  int n_points = 0;
};

// Ordinary least squares on (log N, log I). Requires >= 3 points with
// distinct N and strictly positive qfi.
ScalingFit fit_scaling_exponent(const std::vector<std::pair<int, double>>& points);

enum class Classification { SNL_OR_BELOW, SUPER_SNL, HEISENBERG_LIKE };

std::string to_string(Classification c);

// Margin 0.1 beyond two standard errors: N <= 14 fits carry visible
// finite-size drift, so the bands are deliberately generous.
Classification classify(const ScalingFit& fit);

}  // namespace qfisim
