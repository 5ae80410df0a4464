#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlearn/dynamics.hpp"
#include "qlearn/error.hpp"
#include "qlearn/harness/config.hpp"
#include "qlearn/harness/table.hpp"
#include "qlearn/hydrodynamics.hpp"
#include "qlearn/learner.hpp"
#include "qlearn/wavefunction.hpp"

#ifndef QLEARN_VERSION
#define QLEARN_VERSION "0.0.0"
#endif

namespace qlearn::harness {

/// Process exit codes of an experiment run.
enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitDiverged = 4,
};

struct RunOptions {
  std::optional<std::filesystem::path> out_dir;  ///< overrides output.dir
  std::optional<OutputFormat> format;            ///< overrides output.format
  std::optional<std::int64_t> seed;              ///< reserved, echoed in metadata
};

struct ExperimentResult {
  int exit_code = kExitOk;
  std::filesystem::path out_dir;
  std::vector<std::string> files;
  nlohmann::json meta;
  nlohmann::json error;  ///< null on success
};

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> c{"t", "x", "u", "V", "dis"};
  return c;
}

inline Table trajectory_table(const LearnerRun& run) {
  Table t{trajectory_columns(), {}};
  t.rows.reserve(run.rows.size());
  for (const auto& r : run.rows) t.rows.push_back({r.t, r.x, r.u, r.V, r.dis});
  return t;
}

/// Builds the initial wavefunction described by the `initial` section.
inline Wavefunction make_initial_state(const ExperimentConfig& cfg, const SpatialGrid& grid) {
  const auto& in = cfg.initial;
  switch (in.kind) {
    case InitialKind::gaussian: return gaussian_packet(grid, in.x0, in.sigma, in.p0, cfg.physics.hbar);
    case InitialKind::coherent: return coherent_state({in.x0, in.p0, in.s0, in.omega}, grid);
    case InitialKind::table: {
      Wavefunction psi(grid);
      const auto& rows = in.table;
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        if (x < rows.front().x || x > rows.back().x) continue;
        auto it = std::upper_bound(rows.begin(), rows.end(), x, [](double v, const InitialRow& r) { return v < r.x; });
        if (it == rows.end()) {
          psi[j] = {rows.back().re, rows.back().im};
          continue;
        }
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double w = (x - lo.x) / (hi.x - lo.x);
        psi[j] = {lo.re + w * (hi.re - lo.re), lo.im + w * (hi.im - lo.im)};
      }
      return normalized(std::move(psi));
    }
  }
  throw DomainError("unknown initial state kind");
}

inline DisruptorSource make_disruptor(const ExperimentConfig& cfg) {
  if (cfg.disruptor.kind == DisruptorKind::zero) return DisruptorSource::zero();
  const auto grid = cfg.make_grid();
  return DisruptorSource::field_sampled(FieldSampledDisruptor(make_initial_state(cfg, grid), cfg.make_potential(),
                                                              cfg.make_physics(), cfg.physics.time_scale,
                                                              cfg.disruptor.substeps, cfg.run.scheme,
                                                              cfg.run.derivative));
}

inline LearnerOptions learner_options(const ExperimentConfig& cfg) {
  return {cfg.run.steps, cfg.run.stop_tol, cfg.physics.time_scale};
}

/// Quantum learner run described by `cfg`.
inline LearnerRun run_quantum_learner(const ExperimentConfig& cfg) {
  auto dis = make_disruptor(cfg);
  return run_learner(cfg.initial.x0, cfg.initial.u0, cfg.make_potential(), dis, cfg.make_physics(),
                     learner_options(cfg));
}

/// Classical heavy-ball run with alpha = 1/m, beta = 1 - mu.
inline LearnerRun run_classical_learner(const ExperimentConfig& cfg) {
  const auto params = cfg.make_physics();
  return run_momentum_gd(cfg.initial.x0, cfg.initial.u0, cfg.make_potential(), params.lambda(), params.beta(),
                         learner_options(cfg));
}

/// Data produced by a Kostin evolution in harness form.
struct EvolutionTables {
  Table trajectory;   ///< t, <x>, <p>/m, V(<x>), Dis(<x>)
  Table observables;  ///< t, mean_x, mean_p, norm, mean_S
  Table density;      ///< x, rho at each snapshot
  std::vector<double> snapshot_times;
};

inline EvolutionTables run_evolution(const ExperimentConfig& cfg) {
  const auto grid = cfg.make_grid();
  const auto params = cfg.make_physics();
  const auto potential = cfg.make_potential();
  const auto psi0 = make_initial_state(cfg, grid);

  EvolutionTables out;
  out.trajectory.columns = trajectory_columns();
  std::vector<double> dis_at_mean;
  const auto observer = [&](std::int64_t, double, const Wavefunction& psi) {
    const double mx = expectation_position(psi);
    const auto field = disruptor_field(amplitude_field(psi), params, cfg.run.derivative);
    dis_at_mean.push_back(disruptor_at(field, mx));
  };
  const auto rec = evolve(psi0, potential, params, cfg.make_propagator(), observer);

  for (std::size_t k = 0; k < rec.t.size(); ++k) {
    out.trajectory.rows.push_back(
        {rec.t[k], rec.mean_x[k], rec.mean_p[k] / params.m(), potential.value(rec.mean_x[k]), dis_at_mean[k]});
  }
  out.observables.columns = {"t", "mean_x", "mean_p", "norm", "mean_S"};
  for (std::size_t k = 0; k < rec.t.size(); ++k) {
    out.observables.rows.push_back({rec.t[k], rec.mean_x[k], rec.mean_p[k], rec.norm[k], rec.mean_s[k]});
  }
  out.density.columns = {"x"};
  for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
    out.density.columns.push_back("rho_t" + std::to_string(s));
    out.snapshot_times.push_back(rec.snapshots[s].t);
  }
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> row{grid.x(j)};
    for (const auto& snap : rec.snapshots) row.push_back(std::norm(snap.psi[j]));
    out.density.rows.push_back(std::move(row));
  }
  return out;
}

/// Grid position of the density maximum in column `column` of a density table.
inline double density_argmax(const Table& density, std::size_t column) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < density.rows.size(); ++j) {
    if (density.rows[j][column] > density.rows[best][column]) best = j;
  }
  return density.rows[best][0];
}

namespace detail {

inline nlohmann::json run_summary(const LearnerRun& run) {
  const auto& last = run.rows.back();
  return {{"outcome", to_string(run.outcome)},
          {"steps", static_cast<std::int64_t>(last.t)},
          {"final_x", last.x},
          {"final_u", last.u},
          {"final_V", last.V}};
}

inline double outcome_code(RunOutcome o) {
  switch (o) {
    case RunOutcome::converged: return 0.0;
    case RunOutcome::max_steps: return 1.0;
    case RunOutcome::diverged: return 2.0;
  }
  return -1.0;
}

class Writer {
 public:
  Writer(std::filesystem::path dir, OutputFormat format) : dir_(std::move(dir)), format_(format) {}

  void table(const std::string& stem, const Table& t) {
    const std::string name = stem + (format_ == OutputFormat::csv ? ".csv" : ".json");
    write_table(dir_ / name, t);
    files_.push_back(name);
  }

  const std::vector<std::string>& files() const noexcept { return files_; }

 private:
  std::filesystem::path dir_;
  OutputFormat format_;
  std::vector<std::string> files_;
};

// Runs every sweep point on a small thread pool; results keep config order.
inline std::vector<LearnerRun> run_sweep_points(const ExperimentConfig& cfg) {
  const std::size_t count = cfg.sweep.values.size();
  std::vector<std::optional<LearnerRun>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        auto point = with_parameter(cfg, cfg.sweep.parameter, cfg.sweep.values[i]);
        point.experiment = ExperimentKind::learn;
        results[i] = run_quantum_learner(point);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<LearnerRun> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

}  // namespace detail

/// Executes a validated experiment and persists its artifacts:
/// trajectory data, density snapshots where a wavefunction is evolved, and
/// meta.json with every effective parameter. Failures produce error.json and
/// a non-zero exit code instead of an exception.
inline ExperimentResult run_experiment(ExperimentConfig cfg, const RunOptions& opts = {}) {
  const auto started = std::chrono::steady_clock::now();
  if (opts.out_dir) cfg.output.dir = opts.out_dir->string();
  if (opts.format) cfg.output.format = *opts.format;

  ExperimentResult result;
  result.out_dir = cfg.output.dir;
  nlohmann::json meta;
  meta["program"] = "qlearn";
  meta["version"] = QLEARN_VERSION;
  meta["experiment"] = to_string(cfg.experiment);
  meta["config"] = to_json(cfg);
  meta["seed"] = opts.seed ? nlohmann::json(*opts.seed) : nlohmann::json(nullptr);
  meta["scheme"] = {{"propagator", to_string(cfg.run.scheme)},
                    {"derivative", to_string(cfg.run.derivative)},
                    {"learner_update", "u_t = beta*u_{t-1} - lambda*dV(x_t) + Dis_t(x_t); x_{t+1} = x_t + u_t"}};

  auto fail = [&](int code, const std::string& kind, const std::string& message, std::int64_t step) {
    result.exit_code = code;
    result.error = {{"status", "error"}, {"kind", kind}, {"message", message}, {"exit_code", code}};
    if (step >= 0) result.error["step"] = step;
    try {
      std::filesystem::create_directories(result.out_dir);
      write_text(result.out_dir / "error.json", result.error.dump(2) + "\n");
    } catch (...) {
      // The report is also returned to the caller.
    }
  };

  try {
    validate(cfg);
    std::filesystem::create_directories(result.out_dir);
    std::filesystem::remove(result.out_dir / "error.json");
  } catch (const ConfigError& e) {
    fail(kExitConfig, "config", e.what(), -1);
    return result;
  } catch (const std::filesystem::filesystem_error& e) {
    fail(kExitIo, "io", e.what(), -1);
    return result;
  }

  detail::Writer writer(result.out_dir, cfg.output.format);
  bool diverged = false;
  try {
    switch (cfg.experiment) {
      case ExperimentKind::learn: {
        const auto run = run_quantum_learner(cfg);
        writer.table("trajectory", trajectory_table(run));
        meta["summary"] = detail::run_summary(run);
        diverged = run.outcome == RunOutcome::diverged;
        break;
      }
      case ExperimentKind::compare: {
        const auto quantum = run_quantum_learner(cfg);
        const auto classical = run_classical_learner(cfg);
        writer.table("trajectory", trajectory_table(quantum));
        writer.table("trajectory_classical", trajectory_table(classical));
        Table diff{{"t", "dx", "du"}, {}};
        double max_dx = 0.0;
        const std::size_t common = std::min(quantum.rows.size(), classical.rows.size());
        for (std::size_t k = 0; k < common; ++k) {
          const double dx = quantum.rows[k].x - classical.rows[k].x;
          const double du = quantum.rows[k].u - classical.rows[k].u;
          max_dx = std::max(max_dx, std::abs(dx));
          diff.rows.push_back({quantum.rows[k].t, dx, du});
        }
        writer.table("difference", diff);
        meta["summary"] = {{"quantum", detail::run_summary(quantum)},
                           {"classical", detail::run_summary(classical)},
                           {"compared_rows", common},
                           {"max_abs_dx", max_dx}};
        diverged = quantum.outcome == RunOutcome::diverged || classical.outcome == RunOutcome::diverged;
        break;
      }
      case ExperimentKind::evolve: {
        const auto ev = run_evolution(cfg);
        writer.table("trajectory", ev.trajectory);
        writer.table("observables", ev.observables);
        writer.table("density", ev.density);
        meta["snapshot_times"] = ev.snapshot_times;
        const auto& last = ev.observables.rows.back();
        meta["summary"] = {{"final_mean_x", last[1]}, {"final_norm", last[3]}, {"steps", ev.observables.rows.size() - 1}};
        break;
      }
      case ExperimentKind::figure1: {
        const auto run = run_quantum_learner(cfg);
        writer.table("trajectory", trajectory_table(run));
        const auto ev = run_evolution(cfg);
        writer.table("density", ev.density);
        writer.table("observables", ev.observables);
        meta["snapshot_times"] = ev.snapshot_times;
        meta["summary"] = {{"learner", detail::run_summary(run)},
                           {"density_argmax_first", density_argmax(ev.density, 1)},
                           {"density_argmax_last", density_argmax(ev.density, ev.density.columns.size() - 1)},
                           {"final_mean_x", ev.observables.rows.back()[1]}};
        diverged = run.outcome == RunOutcome::diverged;
        break;
      }
      case ExperimentKind::sweep: {
        const auto runs = detail::run_sweep_points(cfg);
        Table summary{{"index", "value", "steps", "final_x", "final_u", "final_V", "outcome"}, {}};
        for (std::size_t i = 0; i < runs.size(); ++i) {
          const auto& last = runs[i].rows.back();
          summary.rows.push_back({static_cast<double>(i), cfg.sweep.values[i], last.t, last.x, last.u, last.V,
                                  detail::outcome_code(runs[i].outcome)});
          char stem[32];
          std::snprintf(stem, sizeof stem, "trajectory_%03zu", i);
          writer.table(stem, trajectory_table(runs[i]));
          diverged = diverged || runs[i].outcome == RunOutcome::diverged;
        }
        writer.table("sweep", summary);
        meta["outcome_codes"] = {{"converged", 0}, {"max_steps", 1}, {"diverged", 2}};
        break;
      }
    }
  } catch (const NumericalError& e) {
    fail(kExitNumerical, "numerical", e.what(), e.step());
  } catch (const DomainError& e) {
    fail(kExitNumerical, "numerical", e.what(), -1);
  } catch (const IoError& e) {
    fail(kExitIo, "io", e.what(), -1);
  } catch (const std::filesystem::filesystem_error& e) {
    fail(kExitIo, "io", e.what(), -1);
  }

  if (result.exit_code == kExitOk && diverged) {
    result.exit_code = kExitDiverged;
    result.error = {{"status", "diverged"},
                    {"kind", "divergence"},
                    {"message", "learner position exceeded the divergence bound"},
                    {"exit_code", static_cast<int>(kExitDiverged)}};
    try {
      write_text(result.out_dir / "error.json", result.error.dump(2) + "\n");
    } catch (...) {
    }
  }

  meta["status"] = result.exit_code == kExitOk ? "ok" : result.error.value("kind", "error");
  meta["files"] = writer.files();
  meta["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  result.files = writer.files();
  result.meta = meta;
  try {
    write_text(result.out_dir / "meta.json", meta.dump(2) + "\n");
  } catch (const IoError& e) {
    if (result.exit_code == kExitOk) fail(kExitIo, "io", e.what(), -1);
  }
  return result;
}

}  // namespace qlearn::harness
