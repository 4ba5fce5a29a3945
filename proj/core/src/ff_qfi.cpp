#include "qfisim/ff/qfi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qfisim/ff/strings.hpp"
#include "qfisim/pauli.hpp"

namespace qfisim::ff {

namespace {

struct WeightedMonomial {
  cplx coef;
  StringMonomial m;
};

// Expands sum_{fam, i<=j} eta^fam_{ij} O^fam_{ij} into Jordan-Wigner string
// monomials with scalar weights. The identity offset of the generator density
// is dropped: it cannot contribute to a variance.
std::vector<WeightedMonomial> generator_monomials(const EtaTable& tab) {
  const int n = tab.n_sites;
  std::vector<WeightedMonomial> out;
  out.reserve(4 * n * n);
  const cplx iu(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const double d1 = tab.eta[0](i, i);
    if (d1 != 0.0) out.push_back({2.0 * d1, jw_string(MonomialKind::CdagC, i, i)});
    const double d2 = tab.eta[1](i, i);
    if (d2 != 0.0) out.push_back({2.0 * d2, jw_string(MonomialKind::CCdag, i, i)});
    for (int j = i + 1; j < n; ++j) {
      const double e1 = tab.eta[0](i, j);
      if (e1 != 0.0) {
        out.push_back({e1, jw_string(MonomialKind::CdagC, i, j)});
        out.push_back({e1, jw_string(MonomialKind::CdagC, j, i)});
      }
      const double e2 = tab.eta[1](i, j);
      if (e2 != 0.0) {
        out.push_back({e2, jw_string(MonomialKind::CCdag, i, j)});
        out.push_back({e2, jw_string(MonomialKind::CCdag, j, i)});
      }
      const double e3 = tab.eta[2](i, j);
      if (e3 != 0.0) {
        out.push_back({e3, jw_string(MonomialKind::CdagCdag, i, j)});
        out.push_back({e3, jw_string(MonomialKind::CC, j, i)});
      }
      const double e4 = tab.eta[3](i, j);
      if (e4 != 0.0) {
        out.push_back({iu * e4, jw_string(MonomialKind::CdagCdag, i, j)});
        out.push_back({-iu * e4, jw_string(MonomialKind::CC, j, i)});
      }
    }
  }
  return out;
}

// Var over the product state. Monomial pairs with disjoint support intervals
// factorize exactly and cancel against the squared mean, so only overlapping
// pairs enter the double sum: Var = sum_{overlap} c_a c_b (<M_a M_b> - <M_a><M_b>).
double variance_of(const std::vector<WeightedMonomial>& terms, double theta, double phi) {
  const SiteExpectations e(theta, phi);
  const std::size_t n = terms.size();
  std::vector<cplx> singles(n);
  for (std::size_t a = 0; a < n; ++a) singles[a] = expect_string(terms[a].m, e);

  cplx var(0.0, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ma = terms[a].m;
    const cplx ca = terms[a].coef;
    for (std::size_t b = 0; b < n; ++b) {
      const auto& mb = terms[b].m;
      if (mb.lo > ma.hi || mb.hi < ma.lo) continue;  // disjoint supports
      const cplx pair = expect_string_pair(ma, mb, e);
      var += ca * terms[b].coef * (pair - singles[a] * singles[b]);
    }
  }
  if (std::abs(var.imag()) > 1e-8 * std::max(1.0, std::abs(var.real())))
    throw NumericalInvariantError("string variance has nonvanishing imaginary part");
  return std::max(var.real(), 0.0);
}

void check_args(double J, double lambda, double t, int n_sites) {
  if (n_sites < 4 || n_sites > kMaxFfSites || n_sites % 2 != 0)
    throw std::invalid_argument("free-fermion engine: n_sites must be even, 4..64");
  if (!(J >= 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("free-fermion engine: need J >= 0, lambda > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("free-fermion engine: t must be nonnegative");
}

}  // namespace

double qfi_product_state_ff(double J, double lambda, double t, int n_sites,
                            double theta, double phi) {
  check_args(J, lambda, t, n_sites);
  const EtaTable tab = eta_table(J, lambda, t, n_sites, EtaKernel::TimeAveraged);
  const double var = variance_of(generator_monomials(tab), theta, phi);
  return 4.0 * t * t * var;
}

double gamma_product_state_ff(double J, double lambda, double t, int n_sites,
                              double theta, double phi) {
  check_args(J, lambda, t, n_sites);
  const EtaTable tab = eta_table(J, lambda, t, n_sites, EtaKernel::Instantaneous);
  const double var = variance_of(generator_monomials(tab), theta, phi);
  return 2.0 * std::sqrt(var);
}

}  // namespace qfisim::ff
