#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qfisim/ed/qfi.hpp"
#include "qfisim/ff/eta.hpp"
#include "qfisim/model.hpp"

using namespace qfisim;
using ff::cplx;

namespace {

constexpr double kPi = std::numbers::pi;

ModelSpec tfi(int n, double J, double lambda) {
  ModelSpec m;
  m.family = ModelFamily::TFI_PERIODIC;
  m.n_sites = n;
  m.couplings = {{"J", J}, {"lambda", lambda}};
  return m;
}

// parity of the spin-down count in the basis index
bool even_parity(int idx) { return __builtin_popcount(unsigned(idx)) % 2 == 0; }

}  // namespace

TEST_CASE("antiperiodic momentum grid") {
  const auto g = ff::momentum_grid(4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == doctest::Approx(-3 * kPi / 4));
  CHECK(g[1] == doctest::Approx(-kPi / 4));
  CHECK(g[2] == doctest::Approx(kPi / 4));
  CHECK(g[3] == doctest::Approx(3 * kPi / 4));
  CHECK_THROWS_AS(ff::momentum_grid(5), std::invalid_argument);
  CHECK_THROWS_AS(ff::momentum_grid(2), std::invalid_argument);
}

TEST_CASE("mode dispersion and bogoliubov angle") {
  const auto z = ff::mode(0.0, 1.5, 0.7);
  CHECK(z.epsilon == doctest::Approx(3.0));  // field-only chain: flat band 2 lambda
  CHECK(z.cos_theta == doctest::Approx(1.0));
  CHECK(z.sin_theta == doctest::Approx(0.0));

  const auto m = ff::mode(1.0, 1.0, kPi / 2);
  CHECK(m.epsilon == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(m.sin_theta == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(m.cos_theta == doctest::Approx(1.0 / std::sqrt(2.0)));

  for (double k : ff::momentum_grid(8)) {
    const auto mm = ff::mode(2.0, 5.0, k);
    CHECK(mm.sin_theta * mm.sin_theta + mm.cos_theta * mm.cos_theta ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ff::mode(1.0, 1.0, 0.0), std::invalid_argument);  // gapless point
}

TEST_CASE("g kernel small-argument branch is continuous") {
  CHECK(ff::g_kernel(cplx(0, 0)) == cplx(1, 0));
  CHECK(std::abs(ff::g_kernel(cplx(1, 0)) - cplx(std::exp(1.0) - 1.0, 0)) < 1e-14);
  // both sides of the series/exact switch must agree with the same smooth
  // function; at |x| ~ 1e-6 a five-term Taylor value is exact to ~1e-33
  auto taylor = [](cplx x) {
    return 1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0 + x * x * x * x / 120.0;
  };
  const cplx xb(0, 0.99e-6), xa(0, 1.01e-6);
  CHECK(std::abs(ff::g_kernel(xb) - taylor(xb)) < 1e-13);
  CHECK(std::abs(ff::g_kernel(xa) - taylor(xa)) < 1e-13);
}

TEST_CASE("kernel identities: A + B = 2 and the t -> 0 limits") {
  for (double k : ff::momentum_grid(6)) {
    const auto ta = ff::abd_time_averaged(2.0, 5.0, 0.8, k);
    CHECK(std::abs(ta.a + ta.b - cplx(2, 0)) < 1e-13);
    CHECK(std::abs(ta.a.imag()) < 1e-13);

    const auto in = ff::abd_instantaneous(2.0, 5.0, 0.8, k);
    CHECK(std::abs(in.a + in.b - cplx(2, 0)) < 1e-13);

    const auto ta0 = ff::abd_time_averaged(2.0, 5.0, 0.0, k);
    CHECK(std::abs(ta0.a - cplx(2, 0)) < 1e-13);
    CHECK(std::abs(ta0.d) < 1e-13);
  }
}

TEST_CASE("tilde transform inverts and is antiperiodic") {
  const int n = 8;
  const auto grid = ff::momentum_grid(n);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> fk(grid.size());
  for (auto& v : fk) v = cplx(u(rng), u(rng));

  const auto tilde = ff::detail::tilde_transform(fk, grid, n);
  REQUIRE(tilde.size() == std::size_t(2 * n - 1));

  // forward resum over one period recovers F(k)
  for (std::size_t ki = 0; ki < grid.size(); ++ki) {
    cplx acc = 0.0;
    for (int ell = 0; ell < n; ++ell)
      acc += tilde[std::size_t(ell + n - 1)] * std::exp(cplx(0, -grid[ki] * ell));
    CHECK(std::abs(acc - fk[ki]) < 1e-10);
  }
  // antiperiodicity with period N
  for (int ell = 1; ell < n; ++ell)
    CHECK(std::abs(tilde[std::size_t(ell - n + n - 1)] + tilde[std::size_t(ell + n - 1)]) <
          1e-12);
}

TEST_CASE("eta table at t=0 reconstructs the bare z sum") {
  for (int n : {4, 6}) {
    const auto table = ff::eta_table(2.0, 5.0, 0.0, n);
    const Eigen::MatrixXcd rec = ff::reconstruct_generator_density(table);
    Eigen::MatrixXcd zsum = Eigen::MatrixXcd::Zero(1 << n, 1 << n);
    for (int idx = 0; idx < (1 << n); ++idx) {
      double s = 0;
      for (int b = 0; b < n; ++b) s += (idx >> b & 1) ? -1.0 : 1.0;
      zsum(idx, idx) = s;
    }
    CHECK((rec - zsum).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("reconstructed generator density matches exact diagonalization on the even block") {
  const int n = 6;
  const double J = 2.0, lambda = 5.0, t = 0.9;
  const auto hp = build_hamiltonian(tfi(n, J, lambda));
  const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
  const Eigen::MatrixXcd G = eng.generator(t).to_dense() / t;

  const auto table = ff::eta_table(J, lambda, t, n);
  const Eigen::MatrixXcd rec = ff::reconstruct_generator_density(table);

  // library sensing derivative is -sum sigma^z, the expansion's is +sum
  double worst = 0.0;
  for (int r = 0; r < (1 << n); ++r)
    for (int c = 0; c < (1 << n); ++c)
      if (even_parity(r) && even_parity(c))
        worst = std::max(worst, std::abs(G(r, c) + rec(r, c)));
  CHECK(worst < 1e-8);
}

TEST_CASE("finite table converges to the closed forms at large t and N") {
  const double J = 2.0, lambda = 5.0;
  const int n = 128;
  const auto table = ff::eta_table(J, lambda, 1e4, n);
  const auto closed = ff::eta_table_closed_form(J, lambda, n);
  // The closed forms hold at fixed separation; on the ring, separations near
  // N are antiperiodic images of small ones, so compare only up to N/2.
  double worst = 0.0;
  for (int family = 1; family <= 4; ++family)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n && j - i <= n / 2; ++j)
        worst = std::max(worst, std::abs(table.at(family, i, j) - closed.at(family, i, j)));
  CHECK(worst < 1e-4);

  // and the ring edge really is the antiperiodic image: eta3 at separation
  // N-1 carries -2 * (-D(1)) = 2 * (2 J lambda^2 - J^3) / (4 lambda^3)
  const double image = 2.0 * (2.0 * J * lambda * lambda - J * J * J) /
                       (4.0 * lambda * lambda * lambda);
  CHECK(table.at(3, 0, n - 1) == doctest::Approx(image).epsilon(1e-3));
}

TEST_CASE("closed-form tables obey the stated decay") {
  // decaying phase: consecutive off-diagonal ratio is exactly J/lambda
  const auto cf = ff::eta_table_closed_form(2.0, 5.0, 16);
  for (int ell = 2; ell <= 6; ++ell) {
    const double ratio = cf.at(1, 0, ell + 1) / cf.at(1, 0, ell);
    CHECK(ratio == doctest::Approx(0.4).epsilon(1e-14));
  }
}

TEST_CASE("tail sums stay bounded as N doubles") {
  const double J = 2.0, lambda = 5.0, t = 1e3;
  const auto t64 = ff::eta_table(J, lambda, t, 64);
  const auto t128 = ff::eta_table(J, lambda, t, 128);
  // families 1-3 survive the t -> inf limit: doubling N moves the cut sum by
  // well under a percent
  for (int family : {1, 2, 3}) {
    const double c64 = ff::eta_tail_sum(t64, family, 32);
    const double c128 = ff::eta_tail_sum(t128, family, 64);
    CHECK(std::abs(c128 - c64) < 0.01 * c64);
  }
  // family 4 is the finite-t residual: small in absolute terms and decaying
  // with t at fixed N
  const double res3 = ff::eta_tail_sum(t128, 4, 64);
  const double res5 = ff::eta_tail_sum(ff::eta_table(J, lambda, 1e5, 128), 4, 64);
  CHECK(res3 < 0.1);
  CHECK(res5 < res3);
}

TEST_CASE("eta table guards") {
  CHECK_THROWS_AS(ff::eta_table(2.0, 5.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(ff::eta_table(2.0, 5.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ff::eta_closed_form(2.0, 5.0, -1), std::invalid_argument);
}
