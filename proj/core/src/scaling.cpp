#include "qfisim/scaling.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace qfisim {

ScalingFit fit_scaling_exponent(const std::vector<std::pair<int, double>>& points) {
  std::set<int> distinct;
  for (const auto& [n, q] : points) {
    if (n < 1) throw std::invalid_argument("fit_scaling_exponent: N must be positive");
    if (!(q > 0.0))
      throw std::invalid_argument("fit_scaling_exponent: qfi must be strictly positive");
    distinct.insert(n);
  }
  if (points.size() < 3 || distinct.size() != points.size())
    throw std::invalid_argument("fit_scaling_exponent: need >= 3 points with distinct N");

  const std::size_t n = points.size();
  double sx = 0, sy = 0;
  for (const auto& [ni, qi] : points) {
    sx += std::log(double(ni));
    sy += std::log(qi);
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0;
  for (const auto& [ni, qi] : points) {
    const double dx = std::log(double(ni)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(qi) - my);
  }
  ScalingFit fit;
  fit.n_points = int(n);
  fit.alpha = sxy / sxx;
  fit.log_prefactor = my - fit.alpha * mx;

  double ss_res = 0, ss_tot = 0;
  for (const auto& [ni, qi] : points) {
    const double x = std::log(double(ni)), y = std::log(qi);
    const double r = y - (fit.log_prefactor + fit.alpha * x);
    ss_res += r * r;
    ss_tot += (y - my) * (y - my);
  }
  fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
  fit.alpha_stderr = (n > 2) ? std::sqrt((ss_res / double(n - 2)) / sxx) : 0.0;
  return fit;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::SNL_OR_BELOW: return "SNL_OR_BELOW";
    case Classification::SUPER_SNL: return "SUPER_SNL";
    case Classification::HEISENBERG_LIKE: return "HEISENBERG_LIKE";
  }
  return "?";
}

Classification classify(const ScalingFit& fit) {
  const double band = 2.0 * fit.alpha_stderr + 0.1;
  if (fit.alpha <= 1.0 + band) return Classification::SNL_OR_BELOW;
  if (fit.alpha >= 2.0 - band) return Classification::HEISENBERG_LIKE;
  return Classification::SUPER_SNL;
}

}  // namespace qfisim
