#include "ddmcorr/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>
#include <utility>

#include "ddmcorr/config.hpp"
#include "ddmcorr/dynamics.hpp"
#include "ddmcorr/error.hpp"
#include "ddmcorr/measures.hpp"
#include "ddmcorr/model.hpp"
#include "ddmcorr/oracles.hpp"
#include "ddmcorr/runner.hpp"
#include "ddmcorr/scenarios.hpp"

namespace ddmcorr {

using nlohmann::json;

namespace {

constexpr double kSampleSpacing = 0.2;  // ns between samples in the dynamics checks

std::string num(double v, const char* fmt = "%.3g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::size_t sample_every_for(double dt, double spacing) {
  return static_cast<std::size_t>(std::max(1.0, std::round(spacing / dt)));
}

TimeGrid grid_for(double t_end, double dt, double spacing) {
  return TimeGrid{0.0, t_end, dt, sample_every_for(dt, spacing)};
}

PhysicalParams only_rates(double kappa, double gamma, double gamma_phi) {
  PhysicalParams p = default_params();
  p.g = 0.0;
  p.kappa = kappa;
  p.gamma = gamma;
  p.gamma_phi = gamma_phi;
  return p;
}

// Pure product state |qa> (x) |qb> (x) |n>.
CMatrix product_state(const SpaceLayout& layout, std::array<cplx, 2> qa, std::array<cplx, 2> qb, std::size_t n) {
  std::vector<cplx> psi(layout.dim(), 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) psi[layout.index(a, b, n)] = qa[a] * qb[b];
  return CMatrix::projector(psi);
}

double trace_product(const CMatrix& a, const CMatrix& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, i);
  return acc.real();
}

ScenarioSpec default_scenario(double dt) {
  ScenarioSpec sc;
  sc.grid = grid_for(200.0, dt, kSampleSpacing);
  return sc;
}

Evolution<CorrelationSample> run_sampled(const ScenarioSpec& sc) {
  const LindbladGenerator gen = build_generator(sc.params);
  return evolve_and_sample(gen, initial_state(sc), sc.grid,
                           [&](double t, const CMatrix& rho) { return sample_all(rho, gen.layout, t); });
}

// Shared between the ESD and conservation checks.
struct DefaultRun {
  Evolution<CorrelationSample> evolution;
  double seconds = 0.0;
};

class Suite {
public:
  explicit Suite(const ValidationOptions& opts) : opts_(opts) {}

  ValidationReport run() {
    ValidationReport report;
    report.seed = opts_.seed;
    report.dt = opts_.dt;
    const std::vector<std::pair<std::string, std::function<void(CheckResult&)>>> checks = {
        {"initial values D=Q=E=1 for maximally entangled states", [this](CheckResult& r) { initial_values(r); }},
        {"pure states: discord equals entanglement of formation", [this](CheckResult& r) { pure_state_qd_eof(r); }},
        {"ESD interval with surviving discord (bell_psi a^2=1/2, n=1)", [this](CheckResult& r) { sudden_death(r); }},
        {"separable start: discord without entanglement (n=0), entanglement (n=1)",
         [this](CheckResult& r) { separable_generation(r); }},
        {"damped cavity <n>(t) = exp(-kappa t)", [this](CheckResult& r) { damped_cavity(r); }},
        {"pure dephasing |rho_A01| = exp(-gamma_phi t)/2", [this](CheckResult& r) { pure_dephasing(r); }},
        {"relaxation rho_A11 = exp(-gamma t)", [this](CheckResult& r) { relaxation(r); }},
        {"conservation: trace, positivity, cutoff, closed-system invariants",
         [this](CheckResult& r) { conservation(r); }},
        {"discord optimizer vs 512x512 brute-force grid", [this](CheckResult& r) { optimizer_vs_grid(r); }},
        {"RK4 self-convergence ratio on halving dt", [this](CheckResult& r) { convergence(r); }},
        {"determinism: identical runs give identical CSV bytes", [this](CheckResult& r) { determinism(r); }},
    };
    for (std::size_t i = 0; i < checks.size(); ++i) {
      const int id = static_cast<int>(i) + 1;
      if (!opts_.only.empty() && std::find(opts_.only.begin(), opts_.only.end(), id) == opts_.only.end()) continue;
      CheckResult r;
      r.id = id;
      r.name = checks[i].first;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        checks[i].second(r);
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (opts_.progress) {
        *opts_.progress << "[" << (r.passed ? "PASS" : "FAIL") << "] " << id << " " << r.name << " (" << num(r.seconds)
                        << " s)\n"
                        << std::flush;
      }
      report.checks.push_back(std::move(r));
    }
    return report;
  }

private:
  oracles::Rng rng_for(int id) const { return oracles::Rng(opts_.seed + static_cast<std::uint64_t>(id)); }

  const DefaultRun& default_run() {
    if (!default_run_) {
      const auto t0 = std::chrono::steady_clock::now();
      DefaultRun d;
      d.evolution = run_sampled(default_scenario(opts_.dt));
      d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      default_run_ = std::move(d);
    }
    return *default_run_;
  }

  // 1
  void initial_values(CheckResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (Family fam : {Family::BellPsi, Family::BellPhi}) {
      ScenarioSpec sc;
      sc.family = fam;
      sc.amplitude_sq = 0.5;
      sc.resonator_fock = fam == Family::BellPhi ? 0 : 1;
      const SpaceLayout layout(sc.params.n_max);
      const CorrelationSample s = sample_all(initial_state(sc), layout, 0.0);
      for (double v : {s.coherence_D, s.discord_Q, s.eof}) worst = std::max(worst, std::abs(v - 1.0));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.measured = "max |x-1| = " + num(worst) + ", " + num(secs) + " s";
    r.tolerance = "1e-6, < 1 s";
    r.passed = worst < 1e-6 && secs < 1.0;
  }

  // 2
  void pure_state_qd_eof(CheckResult& r) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rng = rng_for(2);
    std::vector<CMatrix> states;
    for (int i = 0; i < 50; ++i) states.push_back(oracles::random_pure_two_qubit(rng));
    for (double a2 : {0.5, 0.2, 0.1}) {
      for (Family fam : {Family::BellPsi, Family::BellPhi}) {
        ScenarioSpec sc;
        sc.family = fam;
        sc.amplitude_sq = a2;
        sc.resonator_fock = fam == Family::BellPhi ? 0 : 1;
        states.push_back(reduce_to_qubits(initial_state(sc), SpaceLayout(sc.params.n_max)));
      }
    }
    double worst = 0.0;
    for (const CMatrix& rho : states) worst = std::max(worst, std::abs(quantum_discord(rho) - eof(rho)));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.measured = "max |Q-E| = " + num(worst) + " over " + std::to_string(states.size()) + " states, " + num(secs) + " s";
    r.tolerance = "1e-4, < 30 s";
    r.passed = worst < 1e-4 && secs < 30.0;
  }

  // 3
  void sudden_death(CheckResult& r) {
    const DefaultRun& run = default_run();
    const auto& s = run.evolution.samples;
    double best_len = 0.0;
    double best_discord = 0.0;
    double qualifying_len = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
      if (s[i].eof != 0.0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      double max_q = 0.0;
      while (j < s.size() && s[j].eof == 0.0) max_q = std::max(max_q, s[j++].discord_Q);
      const double len = s[j - 1].t - s[i].t;
      if (len > best_len) {
        best_len = len;
        best_discord = max_q;
      }
      if (len >= 1.0 && max_q > 0.01) qualifying_len = std::max(qualifying_len, len);
      i = j;
    }
    r.measured = "longest E=0 interval " + num(best_len) + " ns (max Q " + num(best_discord) +
                 "), qualifying " + num(qualifying_len) + " ns; run " + num(run.seconds) + " s";
    r.tolerance = "interval >= 1 ns with max Q > 0.01, < 300 s";
    r.passed = qualifying_len >= 1.0 && run.seconds < 300.0;
  }

  // 4
  void separable_generation(CheckResult& r) {
    auto run = [&](std::size_t n) {
      ScenarioSpec sc;
      sc.family = Family::Separable;
      sc.resonator_fock = n;
      sc.grid = grid_for(100.0, opts_.dt, kSampleSpacing);
      return run_sampled(sc);
    };
    double q0 = 0.0, c0 = 0.0, e1 = 0.0;
    for (const auto& s : run(0).samples) {
      q0 = std::max(q0, s.discord_Q);
      c0 = std::max(c0, s.concurrence);
    }
    for (const auto& s : run(1).samples) e1 = std::max(e1, s.eof);
    r.measured = "n=0: max Q " + num(q0) + ", max C " + num(c0) + "; n=1: max E " + num(e1);
    r.tolerance = "n=0: Q > 0.01, C < 0.05; n=1: E > 0.01";
    r.passed = q0 > 0.01 && c0 < 0.05 && e1 > 0.01;
  }

  // 5
  void damped_cavity(CheckResult& r) {
    const PhysicalParams p = only_rates(default_params().kappa, 0.0, 0.0);
    const LindbladGenerator gen = build_generator(p);
    const CMatrix n_op = embed_op(gen.layout, Site::Resonator, number_op(p.n_max));
    const CMatrix rho0 = product_state(gen.layout, {1.0, 0.0}, {1.0, 0.0}, 1);
    const TimeGrid grid = grid_for(3.0 / p.kappa, opts_.dt, 1.0);
    double worst = 0.0;
    evolve(gen, rho0, grid, [&](double t, const CMatrix& rho) {
      const double exact = std::exp(-p.kappa * t);
      worst = std::max(worst, std::abs(trace_product(rho, n_op) - exact) / exact);
    });
    r.measured = "max rel err " + num(worst) + " over " + num(grid.t_end) + " ns";
    r.tolerance = "1e-6 relative";
    r.passed = worst < 1e-6;
  }

  // 6
  void pure_dephasing(CheckResult& r) {
    const PhysicalParams p = only_rates(0.0, 0.0, default_params().gamma_phi);
    const LindbladGenerator gen = build_generator(p);
    const double h = 1.0 / std::sqrt(2.0);
    const CMatrix rho0 = product_state(gen.layout, {h, h}, {1.0, 0.0}, 0);
    const TimeGrid grid = grid_for(5.0 / p.gamma_phi, opts_.dt, kSampleSpacing);
    const auto dims = gen.layout.dims();
    const std::array<std::size_t, 1> keep{0};
    double worst = 0.0;
    evolve(gen, rho0, grid, [&](double t, const CMatrix& rho) {
      const double exact = 0.5 * std::exp(-p.gamma_phi * t);
      const double got = std::abs(partial_trace(rho, dims, keep)(0, 1));
      worst = std::max(worst, std::abs(got - exact) / exact);
    });
    r.measured = "max rel err " + num(worst) + " over " + num(grid.t_end) + " ns";
    r.tolerance = "1e-6 relative";
    r.passed = worst < 1e-6;
  }

  // 7
  void relaxation(CheckResult& r) {
    const PhysicalParams p = only_rates(0.0, default_params().gamma, 0.0);
    const LindbladGenerator gen = build_generator(p);
    const CMatrix rho0 = product_state(gen.layout, {0.0, 1.0}, {1.0, 0.0}, 0);
    const TimeGrid grid = grid_for(3.0 / p.gamma, opts_.dt, 5.0);
    const auto dims = gen.layout.dims();
    const std::array<std::size_t, 1> keep{0};
    double worst = 0.0;
    evolve(gen, rho0, grid, [&](double t, const CMatrix& rho) {
      const double exact = std::exp(-p.gamma * t);
      const double got = partial_trace(rho, dims, keep)(1, 1).real();
      worst = std::max(worst, std::abs(got - exact) / exact);
    });
    r.measured = "max rel err " + num(worst) + " over " + num(grid.t_end) + " ns";
    r.tolerance = "1e-6 relative";
    r.passed = worst < 1e-6;
  }

  // 8
  void conservation(CheckResult& r) {
    const EvolutionDiagnostics& d = default_run().evolution.diagnostics;
    const bool open_ok = d.max_trace_error < 1e-8 && d.min_eigenvalue > -1e-8 && d.max_cutoff_population < 1e-4;

    ScenarioSpec closed = default_scenario(opts_.dt);
    closed.params.kappa = closed.params.gamma = closed.params.gamma_phi = 0.0;
    const LindbladGenerator gen = build_generator(closed.params);
    const CMatrix n_exc = excitation_number(gen.layout);
    const CMatrix rho0 = initial_state(closed);
    const double n0 = trace_product(rho0, n_exc);
    const double p0 = purity(rho0);
    double dn = 0.0, dp = 0.0;
    evolve(gen, rho0, closed.grid, [&](double, const CMatrix& rho) {
      dn = std::max(dn, std::abs(trace_product(rho, n_exc) - n0));
      dp = std::max(dp, std::abs(purity(rho) - p0));
    });
    const bool closed_ok = dn < 1e-8 && dp < 1e-8;
    r.measured = "trace err " + num(d.max_trace_error) + ", min eig " + num(d.min_eigenvalue) + ", cutoff pop " +
                 num(d.max_cutoff_population) + "; closed: dN " + num(dn) + ", dPurity " + num(dp);
    r.tolerance = "trace 1e-8, eig > -1e-8, cutoff 1e-4, dN 1e-8, dPurity 1e-8";
    r.passed = open_ok && closed_ok;
  }

  // 9
  void optimizer_vs_grid(CheckResult& r) {
    auto rng = rng_for(9);
    std::vector<CMatrix> states;
    for (double z : {0.0, 0.25, 0.5, 0.75, 1.0}) states.push_back(oracles::werner_state(z));
    for (int i = 0; i < 20; ++i) states.push_back(oracles::random_mixed_two_qubit(rng));
    double worst = 0.0;
    for (const CMatrix& rho : states) {
      const double opt = classical_correlation(rho).value;
      const double grid = oracles::grid_classical_correlation(rho).classical_correlation;
      worst = std::max(worst, std::abs(opt - grid));
    }
    const double q0 = quantum_discord(oracles::werner_state(0.0));
    const double q1 = quantum_discord(oracles::werner_state(1.0));
    r.measured = "max |C_opt - C_grid| = " + num(worst) + ", Q(z=0) = " + num(q0) + ", Q(z=1) = " + num(q1, "%.9f");
    r.tolerance = "1e-4";
    r.passed = worst < 1e-4 && std::abs(q0) < 1e-4 && std::abs(q1 - 1.0) < 1e-4;
  }

  // 10
  void convergence(CheckResult& r) {
    ScenarioSpec sc;
    const LindbladGenerator gen = build_generator(sc.params);
    const CMatrix rho0 = initial_state(sc);
    auto final_state = [&](double dt) {
      TimeGrid grid{0.0, 10.0, dt, 1};
      grid.sample_every = grid.steps();
      CMatrix last;
      evolve(gen, rho0, grid, [&](double, const CMatrix& rho) { last = rho; });
      return last;
    };
    const double dt = opts_.dt;
    const CMatrix ref = final_state(dt / 16.0);
    const double e1 = max_abs_diff(final_state(dt), ref);
    const double e2 = max_abs_diff(final_state(dt / 2.0), ref);
    const double ratio = e1 / e2;
    r.measured = "err(dt) " + num(e1) + ", err(dt/2) " + num(e2) + ", ratio " + num(ratio, "%.3f") + " at dt " + num(dt);
    r.tolerance = "ratio in [12, 20]";
    r.passed = std::isfinite(ratio) && ratio >= 12.0 && ratio <= 20.0;
  }

  // 11
  void determinism(CheckResult& r) {
    namespace fs = std::filesystem;
    const fs::path dir = opts_.scratch_dir.empty() ? fs::temp_directory_path() : fs::path(opts_.scratch_dir);
    fs::create_directories(dir);
    RunConfig cfg;
    cfg.scenario = default_scenario(opts_.dt);
    auto read_all = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    std::string contents[2];
    for (int k = 0; k < 2; ++k) {
      cfg.output_path = (dir / ("ddmcorr_determinism_" + std::to_string(k) + ".csv")).string();
      std::ostringstream log;
      const int code = run_scenario(cfg, log);
      if (code != kExitOk) throw NumericalError("run failed: " + log.str());
      contents[k] = read_all(cfg.output_path);
      fs::remove(cfg.output_path);
      fs::remove(diagnostics_path(cfg.output_path));
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    r.measured = std::string(same ? "identical" : "different") + " (" + std::to_string(contents[0].size()) + " bytes)";
    r.tolerance = "bit-identical";
    r.passed = same;
  }

  ValidationOptions opts_;
  std::optional<DefaultRun> default_run_;
};

}  // namespace

bool ValidationReport::all_passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

json ValidationReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"measured", c.measured},
                   {"tolerance", c.tolerance},
                   {"seconds", c.seconds},
                   {"detail", c.detail}});
  }
  return json{{"version", version_string()},
              {"rng", "mt19937_64"},
              {"seed", seed},
              {"dt", dt},
              {"all_passed", all_passed()},
              {"checks", arr}};
}

int validation_check_count() { return 11; }

ValidationReport run_validation(const ValidationOptions& opts) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) throw InvalidArgument("validation dt must be > 0");
  return Suite(opts).run();
}

void print_report_table(std::ostream& out, const ValidationReport& report) {
  out << "validation: seed " << report.seed << " (mt19937_64), dt " << report.dt << " ns\n";
  for (const auto& c : report.checks) {
    char head[96];
    std::snprintf(head, sizeof head, "%-4s %2d  %7.2fs  ", c.passed ? "PASS" : "FAIL", c.id, c.seconds);
    out << head << c.name << "\n                    measured: " << c.measured << "  [tol " << c.tolerance << "]\n";
    if (!c.detail.empty()) out << "                    " << c.detail << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : report.checks) passed += c.passed ? 1 : 0;
  out << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace ddmcorr
