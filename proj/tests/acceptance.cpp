// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlearn/harness/config.hpp"
#include "qlearn/harness/experiment.hpp"
#include "qlearn/harness/table.hpp"
#include "qlearn/qlearn.hpp"

using namespace qlearn;
namespace fs = std::filesystem;
namespace h = qlearn::harness;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpatialGrid flagship_grid() { return build_grid(-20.0, 20.0, 2048, true); }

Verdict ac1_figure1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cfg = h::parse_config(R"({"experiment": "figure1"})");
  const auto run = h::run_quantum_learner(cfg);
  const auto ev = h::run_evolution(cfg);
  const double elapsed = seconds_since(t0);

  const double final_x = std::abs(run.rows.back().x);
  const auto steps = static_cast<std::int64_t>(run.rows.back().t);
  const double first = h::density_argmax(ev.density, 1);
  const double last = h::density_argmax(ev.density, ev.density.columns.size() - 1);
  const bool ok = run.outcome == RunOutcome::converged && final_x < 1e-6 && steps <= 100 &&
                  std::abs(first + 5.0) < 0.05 && std::abs(last) < 0.05 && elapsed < 1.0;
  return {ok, "steps=" + std::to_string(steps) + fmt(" |x_T|=%.3e", final_x) + fmt(" argmax0=%.4f", first) +
                  fmt(" argmaxT=%.4f", last) + fmt(" time=%.3fs", elapsed)};
}

Verdict ac2_coherent_disruptor() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = flagship_grid();
  double worst = 0.0;
  for (double xt : {-5.0, 0.0, 1.3}) {
    const auto psi = coherent_state({xt, 0.0, 0.0, 1.0}, g);
    const auto dis = disruptor_field(amplitude_field(psi), PhysicsParams());
    worst = std::max(worst, std::abs(disruptor_at(dis, xt)));
  }
  const double elapsed = seconds_since(t0);
  return {worst < 1e-6 && elapsed < 1.0, fmt("max|Dis(x_t)|=%.3e", worst) + fmt(" time=%.3fs", elapsed)};
}

Verdict ac3_classical_limit() {
  const auto g = flagship_grid();
  std::vector<double> r(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) r[j] = std::exp(-0.5 * (g.x(j) - 0.4) * (g.x(j) - 0.4) / 1.44);
  const ScalarField R(g, r);
  const double x = 1.37;
  const double ref = disruptor_at(disruptor_field(R, PhysicsParams(1.0, 1.0, 1.0)), x);
  double worst = 0.0;
  for (double hbar : {0.5, 0.1}) {
    const double d = disruptor_at(disruptor_field(R, PhysicsParams(1.0, hbar, 1.0)), x);
    worst = std::max(worst, std::abs(d / (hbar * hbar) / ref - 1.0));
  }
  const double zero = disruptor_at(disruptor_field(R, PhysicsParams(1.0, 0.0, 1.0)), x);
  return {worst < 1e-10 && zero == 0.0 && ref != 0.0,
          fmt("max rel dev=%.3e", worst) + fmt(" Dis(hbar=0)=%.1e", zero)};
}

Verdict ac4_learner_equivalence() {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double m = 0.5 + 4.5 * unit(rng);
    const double mu = 0.05 + 0.95 * unit(rng);
    // Stable regime of the heavy-ball map: lambda w^2 < 2 (1 + beta).
    const double beta = 1.0 - mu;
    const double lw2 = (0.05 + 0.9 * unit(rng)) * 2.0 * (1.0 + beta);
    const double omega = std::sqrt(lw2 * m);
    if (oracle::heavy_ball_spectral_radius(1.0 / m, omega * omega, beta) >= 1.0) return {false, "unstable draw"};
    const auto V = PotentialSpec::harmonic(omega);
    const PhysicsParams params(m, 1.0, mu);
    auto dis = DisruptorSource::zero();
    LearnerState q{0, -10.0 + 20.0 * unit(rng), unit(rng) - 0.5, 0.0};
    LearnerState c = q;
    for (int k = 0; k < 1000; ++k) {
      q = quantum_learn_step(q, V, dis, params);
      c = momentum_gd_step(c, V, 1.0 / m, beta);
      worst = std::max({worst, std::abs(q.x - c.x), std::abs(q.u - c.u)});
    }
  }
  return {worst == 0.0, fmt("max pointwise diff=%.1e over 20x1000 steps", worst)};
}

double pde_ode_error(double dt) {
  const auto g = flagship_grid();
  const PhysicsParams params(1.0, 1.0, 1.0);
  KostinPropagator prop(g, PotentialSpec::harmonic(1.0), params, dt);
  auto psi = coherent_state({-5.0, 0.0, 0.0, 1.0}, g);
  const auto steps = static_cast<std::int64_t>(std::llround(10.0 / dt));
  double worst = 0.0;
  for (std::int64_t k = 1; k <= steps; ++k) {
    prop.step(psi);
    const double t = static_cast<double>(k) * dt;
    worst = std::max(worst, std::abs(expectation_position(psi) - damped_oscillator_closed_form(-5.0, 0.0, 1.0, 1.0, t).x));
  }
  return worst;
}

Verdict ac5_pde_ode() {
  const auto t0 = std::chrono::steady_clock::now();
  const double e1 = pde_ode_error(1e-3);
  const double e2 = pde_ode_error(5e-4);
  const double elapsed = seconds_since(t0);
  const double ratio = e1 / e2;
  return {e1 < 1e-3 && ratio >= 3.5 && ratio <= 4.5 && elapsed < 60.0,
          fmt("err(dt=1e-3)=%.3e", e1) + fmt(" err(dt=5e-4)=%.3e", e2) + fmt(" ratio=%.3f", ratio) +
              fmt(" time=%.2fs", elapsed)};
}

Verdict ac6_norm_conservation() {
  const auto g = flagship_grid();
  double worst = 0.0;
  for (double mu : {0.0, 0.5, 1.0}) {
    KostinPropagator prop(g, PotentialSpec::harmonic(1.0), PhysicsParams(1.0, 1.0, mu), 1e-3);
    auto psi = coherent_state({-5.0, 0.3, 0.0, 1.0}, g);
    const double n0 = norm(psi);
    for (int k = 0; k < 10000; ++k) {
      prop.step(psi);
      worst = std::max(worst, std::abs(norm(psi) - n0));
    }
  }
  return {worst < 1e-8, fmt("max norm drift=%.3e over 1e4 steps", worst)};
}

double q_error(std::int64_t n) {
  const auto g = build_grid(-5.0, 5.0, n, false);
  std::vector<double> r(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) r[j] = std::exp(-0.5 * g.x(j) * g.x(j));
  const auto Q = quantum_potential(ScalarField(g, r), PhysicsParams(1.0, 1.0, 1.0));
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    err = std::max(err, std::abs(Q.values[j] - oracle::gaussian_quantum_potential(g.x(j), 0.0, 1.0)));
  }
  return err;
}

Verdict ac7_quantum_potential_order() {
  const double e1 = q_error(512);
  const double e2 = q_error(1024);
  const double ratio = e1 / e2;
  return {ratio >= 3.5 && ratio <= 4.5,
          fmt("err(n=512)=%.3e", e1) + fmt(" err(n=1024)=%.3e", e2) + fmt(" ratio=%.3f", ratio)};
}

Verdict ac8_no_friction() {
  auto dis = DisruptorSource::zero();
  LearnerOptions opts;
  opts.steps = 1000;
  const auto run = run_learner(-5.0, 0.0, PotentialSpec::harmonic(1.0), dis, PhysicsParams(1.0, 1.0, 0.0), opts);
  if (run.rows.size() != 1001) return {false, "run stopped after " + std::to_string(run.rows.size()) + " rows"};
  const std::size_t window = 100;
  double first = 0.0, last = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    first += run.rows[i].V;
    last += run.rows[run.rows.size() - window + i].V;
  }
  first /= window;
  last /= window;
  const double rel = std::abs(last - first) / first;
  return {rel < 0.05, fmt("mean V first=%.4f", first) + fmt(" last=%.4f", last) + fmt(" rel=%.2e", rel)};
}

std::string strip_volatile(nlohmann::json meta) {
  meta.erase("wall_time_s");
  meta["config"]["output"].erase("dir");
  return meta.dump();
}

Verdict ac9_determinism_round_trip() {
  const auto root = fs::temp_directory_path() / "qlearn_acceptance";
  fs::remove_all(root);
  struct Case {
    std::string name;
    std::string config;
    h::OutputFormat format;
  };
  const std::vector<Case> cases{
      {"figure1", R"({"experiment": "figure1"})", h::OutputFormat::csv},
      {"compare", R"({"experiment": "compare", "physics": {"mu": 0.3}})", h::OutputFormat::json},
      {"evolve", R"({"experiment": "evolve", "physics": {"mu": 0.5}, "initial": {"kind": "coherent"},
                    "run": {"t_final": 3}})",
       h::OutputFormat::csv},
      {"sweep", R"({"experiment": "sweep", "sweep": {"parameter": "physics.mu", "values": [0.2, 0.6, 1.0]}})",
       h::OutputFormat::json},
  };
  std::size_t files = 0;
  for (const auto& c : cases) {
    const auto cfg = h::parse_config(c.config);
    const auto a = root / (c.name + "_a");
    const auto b = root / (c.name + "_b");
    const auto ra = h::run_experiment(cfg, {a, c.format, {}});
    const auto rb = h::run_experiment(cfg, {b, c.format, {}});
    if (ra.exit_code != 0 || rb.exit_code != 0) return {false, c.name + " run failed"};
    for (const auto& f : ra.files) {
      if (h::read_text(a / f) != h::read_text(b / f)) return {false, c.name + "/" + f + " differs between runs"};
      ++files;
    }
    if (strip_volatile(nlohmann::json::parse(h::read_text(a / "meta.json"))) !=
        strip_volatile(nlohmann::json::parse(h::read_text(b / "meta.json")))) {
      return {false, c.name + "/meta.json differs between runs"};
    }
    // Re-parse against independently recomputed in-memory records.
    const std::string ext = c.format == h::OutputFormat::json ? ".json" : ".csv";
    auto check = [&](const std::string& stem, const h::Table& expected) {
      return h::same_values(h::read_table(a / (stem + ext)), expected);
    };
    bool ok = true;
    if (c.name == "figure1" || c.name == "evolve") {
      const auto ev = h::run_evolution(cfg);
      ok = ok && check("density", ev.density) && check("observables", ev.observables);
      if (c.name == "evolve") ok = ok && check("trajectory", ev.trajectory);
    }
    if (c.name == "figure1" || c.name == "compare") {
      ok = ok && check("trajectory", h::trajectory_table(h::run_quantum_learner(cfg)));
    }
    if (c.name == "compare") ok = ok && check("trajectory_classical", h::trajectory_table(h::run_classical_learner(cfg)));
    if (c.name == "sweep") {
      for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "trajectory_%03zu", i);
        const auto point = h::with_parameter(cfg, cfg.sweep.parameter, cfg.sweep.values[i]);
        ok = ok && check(stem, h::trajectory_table(h::run_quantum_learner(point)));
      }
    }
    auto expected_cfg = cfg;
    expected_cfg.output.dir = a.string();
    expected_cfg.output.format = c.format;
    const auto meta = nlohmann::json::parse(h::read_text(a / "meta.json"));
    ok = ok && h::parse_config(meta.at("config").dump()) == expected_cfg;
    if (!ok) return {false, c.name + " output does not re-parse to the in-memory record"};
  }
  fs::remove_all(root);
  return {true, std::to_string(files) + " data files byte-identical across reruns and round-trip exactly"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"AC1 figure-1 reproduction", ac1_figure1},
      {"AC2 coherent-state disruptor vanishes", ac2_coherent_disruptor},
      {"AC3 classical-limit scaling", ac3_classical_limit},
      {"AC4 learner equivalence", ac4_learner_equivalence},
      {"AC5 PDE-ODE cross-validation", ac5_pde_ode},
      {"AC6 norm conservation", ac6_norm_conservation},
      {"AC7 quantum-potential accuracy", ac7_quantum_potential_order},
      {"AC8 no-friction breakdown", ac8_no_friction},
      {"AC9 determinism and round-trip", ac9_determinism_round_trip},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s  %-40s %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
