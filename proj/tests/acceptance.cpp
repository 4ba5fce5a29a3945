// End-to-end acceptance checks for the released library: one line per check,
// [PASS]/[FAIL], nonzero exit when anything fails. Tolerances are pinned here
// on purpose — loosening them is a release decision, not a test detail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfisim/ed/qfi.hpp"
#include "qfisim/experiment.hpp"
#include "qfisim/ff/eta.hpp"
#include "qfisim/ff/qfi.hpp"
#include "qfisim/ff/quench.hpp"
#include "qfisim/model.hpp"
#include "qfisim/scaling.hpp"
#include "qfisim/state.hpp"

using namespace qfisim;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d. %s — %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void check(int idx, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = fn();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1fs)", secs);
  report(idx, name, ok, detail + buf);
}

ModelSpec tfi(int n, double J, double lambda) {
  ModelSpec m;
  m.family = ModelFamily::TFI_PERIODIC;
  m.n_sites = n;
  m.couplings = {{"J", J}, {"lambda", lambda}};
  return m;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --- 1: polarized-preparation quench limit --------------------------------

std::pair<bool, std::string> check_polarized_quench() {
  ff::QuenchSpec q;
  q.J = 2.0;
  q.lambda = 5.0;
  const auto closed = ff::quench_asymptote_closed(q);
  const double ks = ff::quench_asymptote_ksum(q, 2000);
  const bool exact = closed.value == 0.5632;
  const bool sum_ok = std::abs(ks - closed.value) <= 1e-6 * closed.value;
  return {exact && sum_ok,
          "closed=" + fmt(closed.value) + " (exact==0.5632: " + (exact ? "yes" : "no") +
              "), |ksum-closed|/closed=" + fmt(std::abs(ks - closed.value) / closed.value)};
}

// --- 2: four quench branches against the momentum sum ----------------------

std::pair<bool, std::string> check_quench_branches() {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> uj(0.5, 2.0);
  std::uniform_real_distribution<double> ferro(0.2, 0.8), para(1.25, 3.0);
  double worst = 0.0;
  int done = 0;
  const bool lo[2] = {true, false};
  for (bool lam_low : lo)
    for (bool star_low : lo)
      for (int trial = 0; trial < 50; ++trial) {
        ff::QuenchSpec q;
        q.J = uj(rng);
        q.lambda = q.J * (lam_low ? ferro(rng) : para(rng));
        q.lambda_star = q.J * (star_low ? ferro(rng) : para(rng));
        const double closed = ff::quench_asymptote_closed(q).value;
        const double ks = ff::quench_asymptote_ksum(q, 2000);
        worst = std::max(worst, std::abs(ks - closed) / std::max(std::abs(closed), 1e-12));
        ++done;
      }
  return {worst <= 1e-6, std::to_string(done) + " draws, worst rel err " + fmt(worst)};
}

// --- 3: spectral engine vs string engine on the polarized state ------------

std::pair<bool, std::string> check_cross_engine() {
  double worst = 0.0;
  for (int n : {4, 6, 8}) {
    const auto hp = build_hamiltonian(tfi(n, 2.0, 5.0));
    const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
    const auto w = eng.to_eigenbasis(realize_product_state({n, 0.0, 0.0}));
    for (double t : {0.1, 0.5, 2.0}) {
      const double a = eng.qfi(w, t);
      const double b = ff::qfi_product_state_ff(2.0, 5.0, t, n, 0.0, 0.0);
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  }
  return {worst <= 1e-8, "worst |ED-FF| (abs-or-rel) = " + fmt(worst)};
}

// --- 4: growth bound on a randomized ensemble ------------------------------

std::pair<bool, std::string> check_growth_bound_ensemble() {
  std::vector<double> grid(50);
  for (int i = 0; i < 50; ++i) grid[i] = 2.0 * i / 49.0;

  const PauliAxis axes[] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
  double worst_slack = 0.0;
  for (int idx = 0; idx < 100; ++idx) {
    std::mt19937_64 g(1ULL * 1000003ULL + std::uint64_t(idx));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const int n = 2 + idx % 5;  // sizes 2..6
    ModelSpec m;
    m.family = ModelFamily::CUSTOM;
    m.n_sites = n;
    for (int i = 0; i < n; ++i) {
      PauliString p;
      p.n_sites = n;
      p.factors[i] = axes[g() % 3];
      p.coefficient = u(g);
      m.custom_terms.push_back(p);
    }
    for (int i = 0; i + 1 < n; ++i) {
      PauliString p;
      p.n_sites = n;
      p.factors[i] = axes[g() % 3];
      p.factors[i + 1] = axes[g() % 3];
      p.coefficient = u(g);
      m.custom_terms.push_back(p);
    }
    m.couplings["lambda"] = u(g);
    const double theta = std::acos(u(g));
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * kPi);
    const double phi = uphi(g);

    const auto hp = build_hamiltonian(m);
    const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
    const auto rep = eng.verify_growth_bound(realize_product_state({n, theta, phi}), grid);
    for (const auto& r : rep.records) worst_slack = std::min(worst_slack, r.bound_slack);
  }

  // commuting chain: the bound is an equality
  ModelSpec cm;
  cm.family = ModelFamily::CUSTOM;
  cm.n_sites = 4;
  cm.couplings = {{"lambda", 1.0}};
  for (int i = 0; i < 4; ++i) {
    PauliString p;
    p.n_sites = 4;
    p.factors[i] = PauliAxis::Z;
    p.coefficient = 0.7;
    cm.custom_terms.push_back(p);
  }
  const auto hp = build_hamiltonian(cm);
  const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
  const auto rep = eng.verify_growth_bound(realize_product_state({4, kPi / 2, 0.0}), grid);
  double worst_sat = 0.0;
  for (const auto& r : rep.records) worst_sat = std::max(worst_sat, std::abs(r.bound_slack));

  const bool ok = worst_slack >= -1e-4 && worst_sat < 1e-8;
  return {ok, "100 instances, min slack " + fmt(worst_slack) + "; commuting max |slack| " +
                  fmt(worst_sat)};
}

// --- 5: separable growth law on commuting chains ---------------------------

std::pair<bool, std::string> check_separable_growth_law() {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    ModelSpec m;
    m.family = ModelFamily::CUSTOM;
    m.n_sites = n;
    m.couplings = {{"lambda", 1.0}};
    for (int i = 0; i < n; ++i) {
      PauliString p;
      p.n_sites = n;
      p.factors[i] = PauliAxis::Z;
      p.coefficient = 0.7;
      m.custom_terms.push_back(p);
    }
    const auto hp = build_hamiltonian(m);
    const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
    const auto w = eng.to_eigenbasis(realize_product_state({n, kPi / 2, 0.0}));
    for (double t : {0.5, 1.0, 3.0}) {
      const double want = 4.0 * n * t * t;
      worst = std::max(worst, std::abs(eng.qfi(w, t) - want) / want);
    }
  }
  return {worst <= 1e-10, "worst rel deviation from 4Nt^2: " + fmt(worst)};
}

// --- 6: long-time projector vs the t^2 plateau -----------------------------

std::pair<bool, std::string> check_long_time_projector() {
  const int n = 10;
  const auto hp = build_hamiltonian(tfi(n, 2.0, 5.0));
  const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
  const auto w = eng.to_eigenbasis(realize_product_state({n, 0.0, 0.0}));
  const double density = eng.long_time_qfi_density(w);
  const double t = 5e4;
  const double plateau = eng.qfi(w, t) / (t * t);
  const double rel = std::abs(plateau - density) / density;
  const double normalized = density / n;
  const double gap = std::abs(normalized - 0.5632) / 0.5632;
  const bool ok = rel <= 1e-3 && gap <= 0.15;
  return {ok, "plateau rel err " + fmt(rel) + "; density/N = " + fmt(normalized) +
                  " (gap " + fmt(gap) + " from 0.5632)"};
}

// --- 7: decay geometry of the expansion coefficients -----------------------

std::pair<bool, std::string> check_eta_decay() {
  const auto closed = ff::eta_table_closed_form(2.0, 5.0, 16);
  bool exact = true;
  for (int ell = 2; ell <= 6; ++ell)
    exact = exact && (closed.at(1, 0, ell + 1) / closed.at(1, 0, ell) == 0.4);

  const auto numeric = ff::eta_table(2.0, 5.0, 1e4, 256);
  double worst = 0.0;
  for (int ell = 2; ell <= 6; ++ell) {
    const double ratio = numeric.at(1, 0, ell + 1) / numeric.at(1, 0, ell);
    worst = std::max(worst, std::abs(ratio - 0.4) / 0.4);
  }
  return {exact && worst <= 0.05,
          std::string("closed ratio == 0.4: ") + (exact ? "yes" : "no") +
              "; numeric N=256 worst rel dev " + fmt(worst)};
}

// --- 8: closed-form coefficient tables, one point per regime ----------------

std::pair<bool, std::string> check_eta_tables_exact() {
  int bad = 0;
  auto expect = [&](double got, double want) {
    if (got != want) ++bad;
  };
  {  // field above coupling: J=1, lambda=2
    expect(ff::eta_closed_form(1, 2, 0).a_tilde, 2.0 - 1.0 / 8.0);
    expect(ff::eta_closed_form(1, 2, 0).b_tilde, 1.0 / 8.0);
    expect(ff::eta_closed_form(1, 2, 0).d_tilde, 0.0);
    expect(ff::eta_closed_form(1, 2, 1).a_tilde, -1.0 / 32.0);
    expect(ff::eta_closed_form(1, 2, 1).b_tilde, 1.0 / 32.0);
    expect(ff::eta_closed_form(1, 2, 1).d_tilde, -7.0 / 32.0);
    expect(ff::eta_closed_form(1, 2, 3).a_tilde, (3.0 / 16.0) / 8.0);
    expect(ff::eta_closed_form(1, 2, 3).b_tilde, -(3.0 / 16.0) / 8.0);
    expect(ff::eta_closed_form(1, 2, 3).d_tilde, -(3.0 / 16.0) / 8.0);
  }
  {  // coupling above field: J=2, lambda=1
    expect(ff::eta_closed_form(2, 1, 0).a_tilde, 1.5);
    expect(ff::eta_closed_form(2, 1, 0).b_tilde, 0.5);
    expect(ff::eta_closed_form(2, 1, 0).d_tilde, 0.0);
    expect(ff::eta_closed_form(2, 1, 1).a_tilde, -1.0 / 8.0);
    expect(ff::eta_closed_form(2, 1, 1).b_tilde, 1.0 / 8.0);
    expect(ff::eta_closed_form(2, 1, 1).d_tilde, -1.0 / 8.0);
    expect(ff::eta_closed_form(2, 1, 4).a_tilde, (3.0 / 16.0) / 4.0);
    expect(ff::eta_closed_form(2, 1, 4).b_tilde, -(3.0 / 16.0) / 4.0);
    expect(ff::eta_closed_form(2, 1, 4).d_tilde, (3.0 / 16.0) / 4.0);
  }
  {  // critical line: J = lambda = 1
    expect(ff::eta_closed_form(1, 1, 0).a_tilde, 1.5);
    expect(ff::eta_closed_form(1, 1, 0).b_tilde, 0.5);
    expect(ff::eta_closed_form(1, 1, 0).d_tilde, 0.0);
    expect(ff::eta_closed_form(1, 1, 1).a_tilde, -0.25);
    expect(ff::eta_closed_form(1, 1, 1).b_tilde, 0.25);
    expect(ff::eta_closed_form(1, 1, 1).d_tilde, -0.25);
    expect(ff::eta_closed_form(1, 1, 5).a_tilde, 0.0);
    expect(ff::eta_closed_form(1, 1, 5).b_tilde, 0.0);
    expect(ff::eta_closed_form(1, 1, 5).d_tilde, 0.0);
  }
  return {bad == 0, std::to_string(bad) + " of 27 table entries off"};
}

// --- 9: scaling classification across the three chain families -------------

std::pair<bool, std::string> check_scaling_classes() {
  const std::vector<double> ts = {0.5, 5e4};
  std::string detail;
  bool ok = true;

  auto sweep_class = [&](const ModelSpec& base, double theta, double phi,
                         const std::vector<int>& sizes, double t) {
    std::vector<std::pair<int, double>> pts;
    for (int n : sizes) {
      ModelSpec m = base;
      m.n_sites = n;
      const auto hp = build_hamiltonian(m);
      const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
      const auto w = eng.to_eigenbasis(realize_product_state({n, theta, phi}));
      pts.emplace_back(n, eng.qfi(w, t));
    }
    return classify(fit_scaling_exponent(pts));
  };

  const std::vector<int> sizes = {4, 5, 6, 7, 8, 9, 10, 11, 12};

  // nearest-neighbour and kicked-field chains: shot-noise class at both times
  for (const auto& [label, base] : {std::pair<std::string, ModelSpec>{"TFI", tfi(0, 2.0, 5.0)},
                                    {"CI",
                                     [] {
                                       ModelSpec m;
                                       m.family = ModelFamily::CHAOTIC_ISING_OPEN;
                                       m.couplings = {{"J", 1.0}, {"h", 1.0}, {"lambda", 1.0}};
                                       return m;
                                     }()}}) {
    // one engine per size serves both times; rebuild only across sizes
    std::vector<std::pair<int, double>> early, late;
    for (int n : sizes) {
      ModelSpec m = base;
      m.n_sites = n;
      const auto hp = build_hamiltonian(m);
      const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
      const auto w = eng.to_eigenbasis(realize_product_state({n, kPi / 2, 0.0}));
      early.emplace_back(n, eng.qfi(w, ts[0]));
      late.emplace_back(n, eng.qfi(w, ts[1]));
    }
    for (const auto* pts : {&early, &late}) {
      const auto cls = classify(fit_scaling_exponent(*pts));
      if (cls != Classification::SNL_OR_BELOW) ok = false;
      detail += label + (pts == &early ? "@0.5:" : "@5e4:") + to_string(cls) + " ";
    }
  }

  // long-range preset at its late time: must beat shot noise
  const auto preset = preset_config("fig3h");
  if (!preset) return {false, "missing late-time long-range preset"};
  const auto cls = sweep_class(preset->model, preset->theta, preset->phi, preset->n_grid,
                               preset->t_grid.at(0));
  detail += "LRI@late:" + to_string(cls);
  if (cls != Classification::SUPER_SNL) ok = false;

  return {ok, detail};
}

// --- 10: light-cone containment then saturation of covariances -------------

std::pair<bool, std::string> check_light_cone() {
  const int n = 10;
  const auto m = tfi(n, 0.5, 2.0);
  const auto hp = build_hamiltonian(m);
  const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
  const auto terms = local_sensing_terms(m);
  const auto psi = realize_product_state({n, kPi / 2, 0.0});

  const auto early = eng.covariance_map(terms, psi, 0.5);
  const auto late = eng.covariance_map(terms, psi, 5e4);
  const double early_ratio = std::abs(early.matrix(0, 5)) / std::abs(early.matrix(0, 0));
  const double late_ratio = std::abs(late.matrix(0, 5)) / std::abs(late.matrix(0, 0));
  const bool ok = early_ratio < 1e-3 && late_ratio > 1e-2;
  return {ok, "antipodal/diagonal at t=0.5: " + fmt(early_ratio) +
                  " (<1e-3); at t=5e4: " + fmt(late_ratio) + " (>1e-2)"};
}

// --- 11: byte-identical reruns ---------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<bool, std::string> check_determinism() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "qfisim_acceptance_det";
  fs::remove_all(base);

  ExperimentConfig c;
  c.experiment = ExperimentKind::SCALING_SWEEP;
  c.model = tfi(0, 2.0, 5.0);
  c.theta = kPi / 2;
  c.t_grid = {0.5};
  c.n_grid = {4, 6, 8};  // string engine runs even sizes only
  c.engine = EngineKind::BOTH;
  c.seed = 3;

  RunOptions opts;
  opts.threads = 2;
  opts.quiet = true;

  bool ok = true;
  std::string why = "scaling+bound_check reruns byte-identical";
  for (int round = 0; round < 2; ++round) {
    c.output_dir = (base / ("a" + std::to_string(round))).string();
    if (run(c, opts).exit_code != 0) ok = false;
  }
  ok = ok && slurp(base / "a0" / "qfi_scaling.csv") == slurp(base / "a1" / "qfi_scaling.csv") &&
       slurp(base / "a0" / "qfi_scaling_fit.csv") == slurp(base / "a1" / "qfi_scaling_fit.csv");

  ExperimentConfig bc;
  bc.experiment = ExperimentKind::BOUND_CHECK;
  bc.engine = EngineKind::ED;
  bc.seed = 1;
  bc.n_grid = {2, 3, 4};
  bc.t_grid = {0.0, 0.25, 0.5, 0.75, 1.0};  // fine enough for the quadratic stencil's tolerance
  for (int round = 0; round < 2; ++round) {
    bc.output_dir = (base / ("b" + std::to_string(round))).string();
    if (run(bc, opts).exit_code != 0) ok = false;
  }
  ok = ok && slurp(base / "b0" / "bound_check.csv") == slurp(base / "b1" / "bound_check.csv");
  if (!ok) why = "outputs differ between identical runs (or a run failed)";
  fs::remove_all(base);
  return {ok, why};
}

}  // namespace

int main() {
  check(1, "polarized-quench closed form and momentum sum", check_polarized_quench);
  check(2, "four quench branches vs momentum sum (200 draws)", check_quench_branches);
  check(3, "spectral vs string engine on the polarized state", check_cross_engine);
  check(4, "growth bound over 100 random instances + saturation", check_growth_bound_ensemble);
  check(5, "separable chains grow as 4Nt^2", check_separable_growth_law);
  check(6, "long-time projector matches the t^2 plateau", check_long_time_projector);
  check(7, "coefficient decay ratio J/lambda", check_eta_decay);
  check(8, "closed-form coefficient tables per regime", check_eta_tables_exact);
  check(9, "scaling classes across chain families", check_scaling_classes);
  check(10, "covariance light cone: containment then saturation", check_light_cone);
  check(11, "byte-identical reruns", check_determinism);

  if (g_failures > 0) {
    std::printf("%d acceptance check(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance checks passed\n");
  return 0;
}
