#include "qfisim/ff/quench.hpp"

#include <cmath>
#include <stdexcept>

#include "qfisim/ff/modes.hpp"

namespace qfisim::ff {

namespace {

void check_common(const QuenchSpec& q) {
  if (!(q.J > 0.0)) throw std::invalid_argument("quench: J must be > 0");
  if (!(q.lambda > 0.0)) throw std::invalid_argument("quench: lambda must be > 0");
  if (q.lambda_star && !(*q.lambda_star >= 0.0))
    throw std::invalid_argument("quench: lambda_star must be >= 0");
}

bool critical(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

}  // namespace

double quench_asymptote_ksum(const QuenchSpec& q, int n_sites) {
  check_common(q);
  const double J = q.J, lam = q.lambda;
  const bool finite = q.lambda_star.has_value();
  const double ls = finite ? *q.lambda_star : 0.0;
  double acc = 0.0;
  for (double k : momentum_grid(n_sites)) {
    const double c = std::cos(k), s = std::sin(k);
    const double e2 = J * J + lam * lam - 2.0 * lam * J * c;  // (eps_k / 2)^2 at lambda
    double num = (lam - J * c) * (lam - J * c) * s * s;
    if (finite) {
      // same quantity at the preparation field lambda_star
      const double f2 = J * J + ls * ls - 2.0 * ls * J * c;
      num *= (lam - ls) * (lam - ls) / f2;
    }
    acc += num / (e2 * e2);
  }
  return 8.0 * J * J * acc / n_sites;
}

QuenchAsymptote quench_asymptote_closed(const QuenchSpec& q) {
  check_common(q);
  const double J = q.J, lam = q.lambda;
  if (critical(lam, J))
    throw std::invalid_argument("quench_asymptote_closed: lambda at the critical point");
  QuenchAsymptote out;

  if (!q.lambda_star) {  // fully polarized preparation
    if (lam > J) {
      out.branch = "para_inf";
      out.value = J * J * (4.0 * lam * lam - 3.0 * J * J) / (lam * lam * lam * lam);
    } else {
      out.branch = "ferro_inf";
      out.value = 1.0;
    }
    return out;
  }

  const double ls = *q.lambda_star;
  if (critical(ls, J))
    throw std::invalid_argument("quench_asymptote_closed: lambda_star at the critical point");

  if (lam < J && ls < J) {
    out.branch = "ferro_ferro";
    const double d = J * J - lam * ls;
    out.value = (lam - ls) * (lam - ls) * (J * J - 2.0 * lam * ls + ls * ls) / (d * d);
  } else if (lam > J && ls > J) {
    out.branch = "para_para";
    const double d = J * J - lam * ls;
    const double poly = lam * J * J * J * J + 2.0 * ls * J * J * J * J -
                        4.0 * lam * lam * ls * J * J - 3.0 * lam * ls * ls * J * J +
                        4.0 * lam * lam * lam * ls * ls;
    out.value = J * J * (lam - ls) * (lam - ls) * poly /
                (ls * ls * lam * lam * lam * d * d);
  } else if (lam > J && ls < J) {
    out.branch = "para_ferro";
    out.value = (2.0 * ls * J * J - 3.0 * lam * J * J + lam * (ls - 2.0 * lam) * (ls - 2.0 * lam)) /
                (lam * lam * lam);
  } else {  // lam < J < ls
    out.branch = "ferro_para";
    out.value = (J * J - 2.0 * lam * ls + ls * ls) / (ls * ls);
  }
  return out;
}

}  // namespace qfisim::ff
