#include "qfisim/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "csv.hpp"
#include "finite_difference.hpp"
#include "qfisim/ed/qfi.hpp"
#include "qfisim/ff/eta.hpp"
#include "qfisim/ff/qfi.hpp"
#include "qfisim/ff/quench.hpp"
#include "qfisim/scaling.hpp"
#include "qfisim/state.hpp"
#include "qfisim/version.hpp"

namespace qfisim {

namespace {

namespace fs = std::filesystem;

constexpr int kBoundCheckInstances = 100;
// Cross-engine agreement is exact (same symmetry sector) only for the
// z-polarized state; elsewhere the free-fermion result is the antiperiodic
// sector approximation and the delta column is informational.
constexpr double kCrossEngineTol = 1e-6;

bool uses_ed(EngineKind e) { return e == EngineKind::ED || e == EngineKind::BOTH; }
bool uses_ff(EngineKind e) { return e == EngineKind::FREE_FERMION || e == EngineKind::BOTH; }

void run_jobs(int n_jobs, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, n_jobs);
  if (threads <= 1) {
    for (int i = 0; i < n_jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex mtx;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n_jobs;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mtx);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct DiagCollector {
  std::vector<Diagnostic> out;
  void add(const std::string& field, const std::string& rule) { out.push_back({field, rule}); }
};

void check_ff_size(int n, const char* field, DiagCollector& d) {
  if (n < 4 || n > ff::kMaxFfSites || n % 2 != 0)
    d.add(field, "free-fermion engine needs even system sizes in 4..64");
}

void check_ed_size(int n, const char* field, DiagCollector& d) {
  if (n < 2 || n > ed::kMaxEdSites)
    d.add(field, "exact diagonalization handles 2..14 sites");
}

void check_t_grid_series(const std::vector<double>& g, DiagCollector& d) {
  if (g.size() < 2) {
    d.add("t_grid", "needs at least two points (rate column uses finite differences)");
    return;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] >= 0.0) || !std::isfinite(g[i])) {
      d.add("t_grid", "entries must be finite and nonnegative");
      return;
    }
    if (i > 0 && !(g[i] > g[i - 1])) {
      d.add("t_grid", "entries must be strictly increasing");
      return;
    }
  }
}

void check_family_couplings(const ExperimentConfig& c, DiagCollector& d) {
  auto need = [&](const char* name) {
    if (!c.model.has_coupling(name))
      d.add(name, "required coupling for family " + to_string(c.model.family));
  };
  switch (c.model.family) {
    case ModelFamily::TFI_PERIODIC:
      need("J");
      need("lambda");
      break;
    case ModelFamily::CHAOTIC_ISING_OPEN:
      need("J");
      need("h");
      need("lambda");
      break;
    case ModelFamily::LONG_RANGE_ISING:
      need("J");
      need("lambda");
      need("alpha_exponent");
      break;
    case ModelFamily::CUSTOM:
      need("lambda");
      if (c.model.custom_terms.empty())
        d.add("custom_terms", "CUSTOM family requires at least one term");
      for (const auto& p : c.model.custom_terms) {
        for (const auto& [site, axis] : p.factors) {
          (void)axis;
          if (site < 0 || site >= c.model.n_sites) {
            d.add("custom_terms", "term site outside 0..n_sites-1");
            break;
          }
        }
      }
      break;
  }
}

std::string engine_label(EngineKind e) { return to_string(e); }

// ---------------------------------------------------------------------------
// experiment bodies

struct Outputs {
  std::string dir;
  std::vector<std::string> files;

  void write(const std::string& name, const std::string& content) {
    const std::string path = (fs::path(dir) / name).string();
    csv::write_file(path, content);
    files.push_back(path);
  }
};

struct FfParams {
  double J = 0.0, lambda = 0.0;
};

FfParams ff_params(const ModelSpec& m) {
  return {m.coupling("J"), m.coupling("lambda")};
}

void cross_engine_check(double theta, double ed_val, double ff_val) {
  if (std::abs(theta) > 1e-12) return;  // approximate sector: informational only
  if (std::abs(ed_val - ff_val) > kCrossEngineTol * std::max(1.0, std::abs(ed_val)))
    throw NumericalInvariantError("cross-engine QFI mismatch beyond tolerance");
}

void run_timeseries(const ExperimentConfig& c, int threads, Outputs& out) {
  const int n = c.model.n_sites;
  const StateVector psi = realize_product_state({n, c.theta, c.phi});
  const std::size_t nt = c.t_grid.size();

  std::vector<ed::QfiRecord> records;
  std::vector<double> ff_qfi(nt, 0.0);

  if (uses_ed(c.engine)) {
    const HamiltonianPair hp = build_hamiltonian(c.model);
    const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
    records = eng.verify_growth_bound(psi, c.t_grid).records;
  }
  if (uses_ff(c.engine)) {
    const FfParams p = ff_params(c.model);
    run_jobs(int(nt), threads, [&](int i) {
      ff_qfi[std::size_t(i)] =
          ff::qfi_product_state_ff(p.J, p.lambda, c.t_grid[std::size_t(i)], n, c.theta, c.phi);
    });
    if (c.engine == EngineKind::FREE_FERMION) {
      std::vector<double> gammas(nt), s(nt);
      run_jobs(int(nt), threads, [&](int i) {
        gammas[std::size_t(i)] =
            ff::gamma_product_state_ff(p.J, p.lambda, c.t_grid[std::size_t(i)], n, c.theta, c.phi);
      });
      for (std::size_t i = 0; i < nt; ++i) s[i] = std::sqrt(ff_qfi[i]);
      const std::vector<double> rate = detail::lagrange_derivative(c.t_grid, s);
      records.resize(nt);
      for (std::size_t i = 0; i < nt; ++i) {
        records[i].t = c.t_grid[i];
        records[i].qfi = ff_qfi[i];
        records[i].gamma = gammas[i];
        if (ff_qfi[i] < detail::kQfiNoiseFloor) {
          records[i].sqrt_qfi_rate = gammas[i];
          records[i].bound_slack = 0.0;
        } else {
          records[i].sqrt_qfi_rate = rate[i];
          records[i].bound_slack = gammas[i] - rate[i];
        }
      }
    }
  }

  std::vector<std::string> header = {"t", "qfi", "gamma", "sqrt_qfi_rate", "bound_slack"};
  const bool both = c.engine == EngineKind::BOTH;
  if (both) header.push_back("abs_delta_qfi");
  csv::Table table(header);
  for (std::size_t i = 0; i < nt; ++i) {
    std::vector<std::string> row = {csv::cell(records[i].t), csv::cell(records[i].qfi),
                                    csv::cell(records[i].gamma),
                                    csv::cell(records[i].sqrt_qfi_rate),
                                    csv::cell(records[i].bound_slack)};
    if (both) {
      cross_engine_check(c.theta, records[i].qfi, ff_qfi[i]);
      row.push_back(csv::cell(std::abs(records[i].qfi - ff_qfi[i])));
    }
    table.add_row(row);
  }
  out.write("qfi_timeseries.csv", table.text());
}

void run_scaling(const ExperimentConfig& c, int threads, Outputs& out) {
  const std::size_t nn = c.n_grid.size(), nt = c.t_grid.size();
  std::vector<double> ed_vals(nn * nt, 0.0), ff_vals(nn * nt, 0.0);

  run_jobs(int(nn), threads, [&](int ni) {
    const int n = c.n_grid[std::size_t(ni)];
    ModelSpec m = c.model;
    m.n_sites = n;
    if (uses_ed(c.engine)) {
      const HamiltonianPair hp = build_hamiltonian(m);
      const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
      const Eigen::VectorXcd w = eng.to_eigenbasis(realize_product_state({n, c.theta, c.phi}));
      for (std::size_t ti = 0; ti < nt; ++ti)
        ed_vals[std::size_t(ni) * nt + ti] = eng.qfi(w, c.t_grid[ti]);
    }
    if (uses_ff(c.engine)) {
      const FfParams p = ff_params(m);
      for (std::size_t ti = 0; ti < nt; ++ti)
        ff_vals[std::size_t(ni) * nt + ti] =
            ff::qfi_product_state_ff(p.J, p.lambda, c.t_grid[ti], n, c.theta, c.phi);
    }
  });

  const bool both = c.engine == EngineKind::BOTH;
  std::vector<std::string> header = {"t", "n", "qfi", "qfi_over_n", "engine"};
  if (both) header.push_back("abs_delta_qfi");
  csv::Table table(header);

  struct FitJob {
    double t;
    std::string engine;
    std::vector<std::pair<int, double>> points;
  };
  std::vector<FitJob> fit_jobs;

  for (std::size_t ti = 0; ti < nt; ++ti) {
    for (EngineKind ek : {EngineKind::ED, EngineKind::FREE_FERMION}) {
      if (ek == EngineKind::ED && !uses_ed(c.engine)) continue;
      if (ek == EngineKind::FREE_FERMION && !uses_ff(c.engine)) continue;
      FitJob job{c.t_grid[ti], engine_label(ek), {}};
      for (std::size_t ni = 0; ni < nn; ++ni) {
        const int n = c.n_grid[ni];
        const double v =
            (ek == EngineKind::ED) ? ed_vals[ni * nt + ti] : ff_vals[ni * nt + ti];
        std::vector<std::string> row = {csv::cell(c.t_grid[ti]), csv::cell(n), csv::cell(v),
                                        csv::cell(v / double(n)), engine_label(ek)};
        if (both) {
          cross_engine_check(c.theta, ed_vals[ni * nt + ti], ff_vals[ni * nt + ti]);
          row.push_back(csv::cell(std::abs(ed_vals[ni * nt + ti] - ff_vals[ni * nt + ti])));
        }
        table.add_row(row);
        job.points.emplace_back(n, v);
      }
      fit_jobs.push_back(std::move(job));
    }
  }
  out.write("qfi_scaling.csv", table.text());

  csv::Table fits({"t", "engine", "alpha", "alpha_stderr", "log_prefactor", "r_squared",
                   "n_points", "classification"});
  for (const auto& job : fit_jobs) {
    const ScalingFit f = fit_scaling_exponent(job.points);
    fits.add_row({csv::cell(job.t), job.engine, csv::cell(f.alpha), csv::cell(f.alpha_stderr),
                  csv::cell(f.log_prefactor), csv::cell(f.r_squared), csv::cell(f.n_points),
                  to_string(classify(f))});
  }
  out.write("qfi_scaling_fit.csv", fits.text());
}

void run_heatmap(const ExperimentConfig& c, int threads, Outputs& out) {
  const int n = c.model.n_sites;
  const HamiltonianPair hp = build_hamiltonian(c.model);
  const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
  const std::vector<SparseOperator> terms = local_sensing_terms(c.model);
  const StateVector psi = realize_product_state({n, c.theta, c.phi});

  std::vector<ed::CovarianceMap> maps(c.t_grid.size());
  run_jobs(int(c.t_grid.size()), threads, [&](int i) {
    maps[std::size_t(i)] = eng.covariance_map(terms, psi, c.t_grid[std::size_t(i)]);
  });

  csv::Table table({"t", "j", "k", "cov"});
  for (const auto& map : maps)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        table.add_row({csv::cell(map.t), csv::cell(j), csv::cell(k),
                       csv::cell(map.matrix(j, k))});
  out.write("heatmap.csv", table.text());
}

void run_eta_table(const ExperimentConfig& c, int /*threads*/, Outputs& out) {
  const FfParams p = ff_params(c.model);
  const ff::EtaTable tab = ff::eta_table(p.J, p.lambda, c.t_grid.at(0), c.model.n_sites);
  csv::Table table({"family", "i", "j", "eta"});
  for (int family = 1; family <= 4; ++family)
    for (int i = 0; i < tab.n_sites; ++i)
      for (int j = i; j < tab.n_sites; ++j)
        table.add_row({csv::cell(family), csv::cell(i), csv::cell(j),
                       csv::cell(tab.at(family, i, j))});
  out.write("eta.csv", table.text());
}

void run_asymptote(const ExperimentConfig& c, int /*threads*/, Outputs& out) {
  ff::QuenchSpec q;
  q.J = c.model.coupling("J");
  q.lambda = c.model.coupling("lambda");
  if (!c.lambda_star_infinite) q.lambda_star = c.lambda_star_value;
  const ff::QuenchAsymptote closed = ff::quench_asymptote_closed(q);

  csv::Table table({"J", "lambda", "lambda_star", "branch", "value"});
  table.add_row({csv::cell(q.J), csv::cell(q.lambda),
                 q.lambda_star ? csv::cell(*q.lambda_star) : std::string("inf"), closed.branch,
                 csv::cell(closed.value)});
  out.write("asymptote.csv", table.text());

  // Optional numerical self-check: the momentum sum at the largest requested
  // size must reproduce the residue value.
  if (!c.n_grid.empty()) {
    const int n = *std::max_element(c.n_grid.begin(), c.n_grid.end());
    const double ks = ff::quench_asymptote_ksum(q, n);
    if (std::abs(ks - closed.value) > 1e-6 * std::max(std::abs(closed.value), 1e-12))
      throw NumericalInvariantError("momentum-sum asymptote disagrees with residue closed form");
  }
}

double draw_u(std::mt19937_64& g) { return double(g() >> 11) * 0x1.0p-53; }
double draw_uniform(std::mt19937_64& g, double a, double b) { return a + (b - a) * draw_u(g); }

PauliAxis draw_axis(std::mt19937_64& g) {
  switch (g() % 3) {
    case 0: return PauliAxis::X;
    case 1: return PauliAxis::Y;
    default: return PauliAxis::Z;
  }
}

ModelSpec draw_random_model(std::mt19937_64& g, int n) {
  ModelSpec m;
  m.family = ModelFamily::CUSTOM;
  m.n_sites = n;
  for (int i = 0; i < n; ++i) {
    PauliString p;
    p.n_sites = n;
    p.factors[i] = draw_axis(g);
    p.coefficient = cplx(draw_uniform(g, -1.0, 1.0), 0.0);
    m.custom_terms.push_back(std::move(p));
  }
  for (int i = 0; i + 1 < n; ++i) {
    PauliString p;
    p.n_sites = n;
    p.factors[i] = draw_axis(g);
    p.factors[i + 1] = draw_axis(g);
    p.coefficient = cplx(draw_uniform(g, -1.0, 1.0), 0.0);
    m.custom_terms.push_back(std::move(p));
  }
  m.couplings["lambda"] = draw_uniform(g, -1.0, 1.0);
  return m;
}

void run_bound_check(const ExperimentConfig& c, int threads, Outputs& out) {
  std::vector<int> sizes = c.n_grid;
  if (sizes.empty()) sizes = {2, 3, 4, 5, 6};
  std::vector<double> grid = c.t_grid;
  if (grid.empty()) {
    grid.resize(50);
    for (int i = 0; i < 50; ++i) grid[std::size_t(i)] = 2.0 * i / 49.0;
  }

  struct Instance {
    int n = 0;
    ed::GrowthBoundReport report;
  };
  std::vector<Instance> inst(kBoundCheckInstances);

  run_jobs(kBoundCheckInstances, threads, [&](int idx) {
    std::mt19937_64 g(c.seed * 1000003ULL + std::uint64_t(idx));
    const int n = sizes[std::size_t(idx) % sizes.size()];
    const ModelSpec m = draw_random_model(g, n);
    const double theta = std::acos(draw_uniform(g, -1.0, 1.0));
    const double phi = draw_uniform(g, 0.0, 2.0 * std::numbers::pi);
    const HamiltonianPair hp = build_hamiltonian(m);
    const ed::Engine eng(ed::eigendecompose(hp.H), hp.dH);
    inst[std::size_t(idx)].n = n;
    inst[std::size_t(idx)].report =
        eng.verify_growth_bound(realize_product_state({n, theta, phi}), grid);
  });

  csv::Table table({"instance", "n_sites", "t", "qfi", "gamma", "sqrt_qfi_rate",
                    "bound_slack", "tol_rate"});
  bool ok = true;
  for (int idx = 0; idx < kBoundCheckInstances; ++idx) {
    const auto& e = inst[std::size_t(idx)];
    if (!e.report.all_within(0.0)) ok = false;
    for (const auto& r : e.report.records)
      table.add_row({csv::cell(idx), csv::cell(e.n), csv::cell(r.t), csv::cell(r.qfi),
                     csv::cell(r.gamma), csv::cell(r.sqrt_qfi_rate),
                     csv::cell(r.bound_slack), csv::cell(e.report.tol_rate)});
  }
  out.write("bound_check.csv", table.text());
  if (!ok)
    throw NumericalInvariantError(
        "growth-bound violation beyond the finite-difference tolerance");
}

void write_manifest(const ExperimentConfig& c, const RunResult& res, double wall_seconds,
                    int threads) {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config_to_json(c));
  j["library_version"] = kVersion;
  j["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." +
                       std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  j["prng"] = "mt19937_64";
  j["threads"] = threads;
  j["wall_time_seconds"] = wall_seconds;
  j["exit_code"] = res.exit_code;
  if (!res.error.empty()) j["error"] = res.error;
  j["files"] = res.files;
  csv::write_file((fs::path(c.output_dir) / "run_manifest.json").string(), j.dump(2) + "\n");
}

}  // namespace

std::vector<Diagnostic> validate(const ExperimentConfig& c) {
  DiagCollector d;
  if (!std::isfinite(c.theta) || !std::isfinite(c.phi))
    d.add("theta", "state angles must be finite");

  const bool sweep = c.experiment == ExperimentKind::SCALING_SWEEP;
  const bool needs_model = c.experiment != ExperimentKind::BOUND_CHECK;
  if (needs_model) check_family_couplings(c, d);

  if (uses_ff(c.engine) && needs_model && c.model.family != ModelFamily::TFI_PERIODIC)
    d.add("engine", "free-fermion engine requires the TFI_PERIODIC family");

  switch (c.experiment) {
    case ExperimentKind::QFI_TIMESERIES: {
      check_t_grid_series(c.t_grid, d);
      if (uses_ed(c.engine)) check_ed_size(c.model.n_sites, "n_sites", d);
      if (uses_ff(c.engine)) check_ff_size(c.model.n_sites, "n_sites", d);
      break;
    }
    case ExperimentKind::SCALING_SWEEP: {
      if (c.model.family == ModelFamily::CUSTOM)
        d.add("family", "CUSTOM models have a fixed size and cannot sweep n_grid");
      std::set<int> distinct(c.n_grid.begin(), c.n_grid.end());
      if (c.n_grid.size() < 3 || distinct.size() != c.n_grid.size())
        d.add("n_grid", "needs at least three distinct sizes for the scaling fit");
      for (int n : c.n_grid) {
        if (uses_ed(c.engine)) check_ed_size(n, "n_grid", d);
        if (uses_ff(c.engine)) check_ff_size(n, "n_grid", d);
      }
      if (c.t_grid.empty()) d.add("t_grid", "needs at least one time");
      for (double t : c.t_grid)
        if (!(t > 0.0) || !std::isfinite(t)) {
          d.add("t_grid", "sweep times must be finite and positive (qfi must be nonzero to fit)");
          break;
        }
      break;
    }
    case ExperimentKind::HEATMAP: {
      if (c.engine != EngineKind::ED)
        d.add("engine", "heatmap experiments run on the ED engine");
      check_ed_size(c.model.n_sites, "n_sites", d);
      if (c.t_grid.empty()) d.add("t_grid", "needs at least one time");
      for (double t : c.t_grid)
        if (!(t >= 0.0) || !std::isfinite(t)) {
          d.add("t_grid", "entries must be finite and nonnegative");
          break;
        }
      break;
    }
    case ExperimentKind::ETA_TABLE: {
      if (c.engine != EngineKind::FREE_FERMION)
        d.add("engine", "eta tables come from the free-fermion engine");
      if (needs_model && c.model.family != ModelFamily::TFI_PERIODIC)
        d.add("family", "eta tables are defined for the TFI_PERIODIC family");
      if (c.model.n_sites < 4 || c.model.n_sites > 512 || c.model.n_sites % 2 != 0)
        d.add("n_sites", "eta tables support even sizes in 4..512");
      if (c.t_grid.size() != 1 || !(c.t_grid[0] >= 0.0) || !std::isfinite(c.t_grid[0]))
        d.add("t_grid", "exactly one nonnegative time");
      break;
    }
    case ExperimentKind::ASYMPTOTE: {
      if (c.engine != EngineKind::FREE_FERMION)
        d.add("engine", "asymptotes come from the free-fermion engine");
      if (c.model.family != ModelFamily::TFI_PERIODIC)
        d.add("family", "quench asymptotes are defined for the TFI_PERIODIC family");
      if (!c.has_lambda_star) d.add("lambda_star", "required (number or \"inf\")");
      const bool haveJ = c.model.has_coupling("J"), haveL = c.model.has_coupling("lambda");
      if (haveJ && !(c.model.coupling("J") > 0.0)) d.add("J", "must be > 0");
      if (haveL && !(c.model.coupling("lambda") > 0.0)) d.add("lambda", "must be > 0");
      if (haveJ && haveL) {
        const double J = c.model.coupling("J"), lam = c.model.coupling("lambda");
        if (std::abs(lam - J) <= 1e-9 * std::max(lam, J))
          d.add("lambda", "critical point lambda = J is outside the residue formulas");
        if (c.has_lambda_star && !c.lambda_star_infinite) {
          if (!(c.lambda_star_value >= 0.0)) d.add("lambda_star", "must be >= 0");
          if (std::abs(c.lambda_star_value - J) <= 1e-9 * std::max(c.lambda_star_value, J))
            d.add("lambda_star", "critical point lambda_star = J is outside the residue formulas");
        }
      }
      // n_grid feeds the scalar momentum sum only, so no string-algebra cap.
      for (int n : c.n_grid)
        if (n < 4 || n % 2 != 0) {
          d.add("n_grid", "momentum sums need even sizes >= 4");
          break;
        }
      break;
    }
    case ExperimentKind::BOUND_CHECK: {
      if (c.engine != EngineKind::ED)
        d.add("engine", "bound checks run on the ED engine");
      for (int n : c.n_grid) check_ed_size(n, "n_grid", d);
      if (!c.t_grid.empty()) {
        check_t_grid_series(c.t_grid, d);
        if (c.t_grid.size() < 4)
          d.add("t_grid", "certifying the growth bound needs at least 4 time points");
      }
      break;
    }
  }

  if (needs_model && !sweep && c.experiment != ExperimentKind::ASYMPTOTE) {
    const int min_sites = (c.model.family == ModelFamily::CUSTOM) ? 1 : 2;
    if (c.model.n_sites < min_sites) d.add("n_sites", "too small for this family");
  }
  return d.out;
}

RunResult run(const ExperimentConfig& config, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig c = config;
  if (opts.engine_override) c.engine = *opts.engine_override;
  if (opts.output_dir_override) c.output_dir = *opts.output_dir_override;

  RunResult res;
  res.diagnostics = validate(c);
  if (!res.diagnostics.empty()) {
    res.exit_code = 1;
    res.error = "invalid config";
    return res;
  }

  int threads = opts.threads;
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;

  Outputs out;
  out.dir = c.output_dir;
  try {
    fs::create_directories(c.output_dir);
    switch (c.experiment) {
      case ExperimentKind::QFI_TIMESERIES: run_timeseries(c, threads, out); break;
      case ExperimentKind::SCALING_SWEEP: run_scaling(c, threads, out); break;
      case ExperimentKind::HEATMAP: run_heatmap(c, threads, out); break;
      case ExperimentKind::ETA_TABLE: run_eta_table(c, threads, out); break;
      case ExperimentKind::ASYMPTOTE: run_asymptote(c, threads, out); break;
      case ExperimentKind::BOUND_CHECK: run_bound_check(c, threads, out); break;
    }
    res.files = out.files;
  } catch (const NumericalInvariantError& e) {
    res.files = out.files;
    res.exit_code = 2;
    res.error = e.what();
  } catch (const std::invalid_argument& e) {
    res.files = out.files;
    res.exit_code = 1;
    res.error = e.what();
  } catch (const std::exception& e) {
    res.files = out.files;
    res.exit_code = 2;
    res.error = e.what();
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  try {
    write_manifest(c, res, wall, threads);
    res.files.push_back((fs::path(c.output_dir) / "run_manifest.json").string());
  } catch (const std::exception& e) {
    if (res.exit_code == 0) {
      res.exit_code = 2;
      res.error = e.what();
    }
  }
  return res;
}

namespace {

ExperimentConfig sweep_preset(ModelFamily family, std::map<std::string, double> couplings,
                              double t) {
  ExperimentConfig c;
  c.experiment = ExperimentKind::SCALING_SWEEP;
  c.model.family = family;
  c.model.couplings = std::move(couplings);
  c.theta = std::numbers::pi / 2.0;
  c.phi = 0.0;
  c.t_grid = {t};
  c.engine = EngineKind::ED;
  return c;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = [] {
    std::vector<Preset> v;

    ExperimentConfig fig2c = sweep_preset(ModelFamily::TFI_PERIODIC,
                                          {{"J", 2.0}, {"lambda", 5.0}}, 0.5);
    fig2c.n_grid = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    v.push_back({"fig2c",
                 "QFI vs chain size, periodic transverse-field chain (J=2, lambda=5, "
                 "theta=pi/2) at t=0.5",
                 fig2c});

    ExperimentConfig fig2d = fig2c;
    fig2d.t_grid = {5e4};
    v.push_back({"fig2d",
                 "QFI vs chain size, periodic transverse-field chain (J=2, lambda=5, "
                 "theta=pi/2) at t=5e4",
                 fig2d});

    ExperimentConfig fig3g = sweep_preset(
        ModelFamily::LONG_RANGE_ISING,
        {{"J", 1.0}, {"lambda", 0.5}, {"alpha_exponent", 3.0}}, 2.0);
    fig3g.theta = 0.0;
    fig3g.n_grid = {4, 5, 6, 7, 8, 9, 10, 11, 12};
    v.push_back({"fig3g",
                 "QFI vs chain size, long-range Ising chain (J=1, lambda=0.5, alpha=3, "
                 "theta=0) at an early time, t=2",
                 fig3g});

    ExperimentConfig fig3h = fig3g;
    fig3h.t_grid = {5e4};
    v.push_back({"fig3h",
                 "QFI vs chain size, long-range Ising chain (J=1, lambda=0.5, alpha=3, "
                 "theta=0) deep in the equilibrated regime, t=5e4",
                 fig3h});
    return v;
  }();
  return list;
}

std::optional<ExperimentConfig> preset_config(const std::string& name) {
  for (const auto& p : presets())
    if (p.name == name) return p.config;
  return std::nullopt;
}

}  // namespace qfisim
