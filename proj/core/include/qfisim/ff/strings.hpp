#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qfisim::ff {

using cplx = std::complex<double>;

// Jordan-Wigner image of a fermionic monomial: a scalar sign times a product
// of single-site operators drawn from {sigma+, sigma-, sigma^z, (1+-sigma^z)/2},
// with a sigma^z string between the endpoints. Encodes
//   c_i+ c_j, c_i c_j+, c_i+ c_j+, c_i c_j   (0-based sites, any order of i, j)
// via c_i+ = (prod_{m<i} sigma_m^z) sigma_i^-  (spin-down = fermion present).
enum class SiteOp : std::uint8_t { Id, Sp, Sm, Z, Pup, Pdn };

enum class MonomialKind { CdagC, CCdag, CdagCdag, CC };

struct StringMonomial {
  double sign = 1.0;  // JW reordering sign
  int lo = 0, hi = 0; // support interval (inclusive); empty support => zero op
  SiteOp end_lo = SiteOp::Id;
  SiteOp end_hi = SiteOp::Id;  // sites strictly between carry SiteOp::Z
  bool zero = false;           // c_i c_i = c_i+ c_i+ = 0

  SiteOp op_at(int s) const {
    if (s == lo) return end_lo;
    if (s == hi) return end_hi;
    return (s > lo && s < hi) ? SiteOp::Z : SiteOp::Id;
  }
};

StringMonomial jw_string(MonomialKind kind, int i, int j);

// Per-site expectation values of the elementary operators over the spinor
// chi = (cos(theta/2), sin(theta/2) e^{i phi}).
struct SiteExpectations {
  cplx val[6];  // indexed by SiteOp
  explicit SiteExpectations(double theta, double phi);
};

// <chi^N| A |chi^N> for a single string.
cplx expect_string(const StringMonomial& m, const SiteExpectations& e);

// <chi^N| A B |chi^N> for a product of two strings, factorized site-by-site
// through the closed multiplication table of the elementary operators.
// O(support length) scalar operations.
cplx expect_string_pair(const StringMonomial& a, const StringMonomial& b,
                        const SiteExpectations& e);

// Dense 2^n spin-basis realization (tests only).
Eigen::MatrixXcd realize_string(const StringMonomial& m, int n_sites);

}  // namespace qfisim::ff
