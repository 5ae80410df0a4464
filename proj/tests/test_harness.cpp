#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>

#include "qlearn/harness/config.hpp"
#include "qlearn/harness/experiment.hpp"
#include "qlearn/harness/table.hpp"

using namespace qlearn;
using namespace qlearn::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qlearn_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(read_text(p)); }

ConfigError config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  throw std::runtime_error("expected a ConfigError for: " + text);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QLEARN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ParseConfig, MinimalFigure1FillsDefaults) {
  const auto cfg = parse_config(R"({"experiment": "figure1"})");
  EXPECT_EQ(cfg.experiment, ExperimentKind::figure1);
  EXPECT_EQ(cfg.physics.m, 1.0);
  EXPECT_EQ(cfg.physics.mu, 1.0);
  EXPECT_EQ(cfg.physics.hbar, 1.0);
  EXPECT_EQ(cfg.potential.kind, PotentialKind::harmonic);
  EXPECT_EQ(cfg.potential.omega, 1.0);
  EXPECT_EQ(cfg.initial.x0, -5.0);
  EXPECT_EQ(cfg.initial.u0, 0.0);
  EXPECT_EQ(cfg.run.steps, 200);
  EXPECT_EQ(cfg.run.stop_tol, 1e-8);
  EXPECT_EQ(cfg.grid.n, 2048);
}

TEST(ParseConfig, ZeroMassNamesField) {
  const auto e = config_error(R"({"experiment": "learn", "physics": {"m": 0}})");
  EXPECT_EQ(e.kind(), ConfigError::Kind::invalid_value);
  EXPECT_EQ(e.field(), "physics.m");
  EXPECT_NE(std::string(e.what()).find("physics.m"), std::string::npos);
}

TEST(ParseConfig, UnknownKeyRejected) {
  const auto e = config_error(R"({"experiment": "learn", "physics": {"gamma": 0.3}})");
  EXPECT_EQ(e.kind(), ConfigError::Kind::unknown_key);
  EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
  EXPECT_EQ(config_error(R"({"experiment": "learn", "gamma": 1})").kind(), ConfigError::Kind::unknown_key);
}

TEST(ParseConfig, SyntaxErrorIsDistinct) {
  EXPECT_EQ(config_error(R"({"experiment": "learn",)").kind(), ConfigError::Kind::syntax);
}

TEST(ParseConfig, InvariantViolations) {
  EXPECT_EQ(config_error(R"({"experiment": "learn", "physics": {"mu": 1.5}})").field(), "physics.mu");
  EXPECT_EQ(config_error(R"({"experiment": "evolve", "grid": {"n": 1000}})").kind(), ConfigError::Kind::invalid_value);
  EXPECT_EQ(config_error(R"({"experiment": "learn", "run": {"steps": 0}})").field(), "run.steps");
  EXPECT_EQ(config_error(R"({"experiment": "learn", "physics": {"m": "heavy"}})").field(), "physics.m");
  EXPECT_EQ(config_error(R"({"experiment": "learn", "sweep": {"values": [1]}})").kind(), ConfigError::Kind::unknown_key);
  EXPECT_EQ(config_error(R"({"experiment": "dance"})").field(), "experiment");
}

TEST(ParseConfig, SubcommandMustAgree) {
  EXPECT_EQ(parse_config("{}", ExperimentKind::evolve).experiment, ExperimentKind::evolve);
  EXPECT_THROW(parse_config(R"({"experiment": "learn"})", ExperimentKind::evolve), ConfigError);
  EXPECT_THROW(parse_config("{}"), ConfigError);
}

TEST(ParseConfig, EffectiveConfigRoundTrips) {
  const auto cfg = parse_config(R"({
    "experiment": "sweep",
    "physics": {"m": 2.5, "mu": 0.3},
    "potential": {"kind": "polynomial", "coefficients": [0, 0.1, 0.5]},
    "initial": {"kind": "gaussian", "x0": -3, "sigma": 0.9},
    "sweep": {"parameter": "physics.mu", "values": [0.1, 0.5, 1.0]}
  })");
  const auto again = parse_config(to_json(cfg).dump());
  EXPECT_TRUE(again == cfg);
  EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Table, CsvAndJsonRoundTripExactly) {
  Table t{{"a", "b", "c"},
          {{std::numbers::pi, -0.0, 1e-300},
           {std::nan(""), 12345.678901234567, -2.5e17},
           {std::nextafter(1.0, 2.0), 0.1, 3.0}}};
  EXPECT_TRUE(same_values(from_csv(to_csv(t)), t));
  EXPECT_TRUE(same_values(table_from_json(nlohmann::json::parse(to_json(t).dump())), t));
  const auto dir = scratch("table");
  fs::create_directories(dir);
  write_table(dir / "t.csv", t);
  write_table(dir / "t.json", t);
  EXPECT_TRUE(same_values(read_table(dir / "t.csv"), t));
  EXPECT_TRUE(same_values(read_table(dir / "t.json"), t));
  EXPECT_THROW(from_csv("a,b\n1,2,3\n"), IoError);
  EXPECT_THROW(from_csv("a\nbanana\n"), IoError);
}

TEST(RunExperiment, Figure1) {
  const auto dir = scratch("figure1");
  const auto result = run_experiment(parse_config(R"({"experiment": "figure1"})"), {dir, {}, {}});
  ASSERT_EQ(result.exit_code, kExitOk) << result.error.dump();
  const auto traj = read_table(dir / "trajectory.csv");
  EXPECT_EQ(traj.columns, trajectory_columns());
  EXPECT_LE(traj.rows.size(), 101u);
  EXPECT_LT(std::abs(traj.rows.back()[1]), 1e-6);
  const auto density = read_table(dir / "density.csv");
  EXPECT_EQ(density.columns.front(), "x");
  EXPECT_EQ(density.columns[1], "rho_t0");
  EXPECT_NEAR(density_argmax(density, 1), -5.0, 0.05);
  EXPECT_LT(std::abs(density_argmax(density, density.columns.size() - 1)), 0.05);
  const auto meta = read_json(dir / "meta.json");
  EXPECT_EQ(meta["snapshot_times"].size(), density.columns.size() - 1);
  EXPECT_EQ(meta["status"], "ok");
  EXPECT_FALSE(fs::exists(dir / "error.json"));
}

TEST(RunExperiment, CompareWithZeroDisruptorIsExact) {
  const auto dir = scratch("compare");
  const auto cfg = parse_config(R"({"experiment": "compare", "physics": {"m": 1.7, "mu": 0.2},
                                    "potential": {"omega": 0.9}, "initial": {"x0": 3.0, "u0": -0.4},
                                    "run": {"steps": 500}})");
  const auto result = run_experiment(cfg, {dir, {}, {}});
  ASSERT_EQ(result.exit_code, kExitOk) << result.error.dump();
  const auto diff = read_table(dir / "difference.csv");
  ASSERT_GT(diff.rows.size(), 10u);
  for (const auto& row : diff.rows) {
    EXPECT_EQ(row[1], 0.0);
    EXPECT_EQ(row[2], 0.0);
  }
  EXPECT_EQ(result.meta["summary"]["max_abs_dx"], 0.0);
}

TEST(RunExperiment, EvolveCoherentMatchesClosedForm) {
  const auto dir = scratch("evolve");
  const auto cfg = parse_config(R"({"experiment": "evolve", "physics": {"mu": 0.5},
                                    "initial": {"kind": "coherent", "x0": -5},
                                    "run": {"dt": 0.001, "t_final": 5, "snapshot_every": 1000}})");
  const auto result = run_experiment(cfg, {dir, OutputFormat::json, {}});
  ASSERT_EQ(result.exit_code, kExitOk) << result.error.dump();
  const auto obs = read_table(dir / "observables.json");
  EXPECT_EQ(obs.columns, (std::vector<std::string>{"t", "mean_x", "mean_p", "norm", "mean_S"}));
  ASSERT_EQ(obs.rows.size(), 5001u);
  for (const auto& row : obs.rows) {
    EXPECT_NEAR(row[1], damped_oscillator_closed_form(-5.0, 0.0, 0.5, 1.0, row[0]).x, 1e-3) << "t=" << row[0];
  }
  const auto density = read_table(dir / "density.json");
  EXPECT_EQ(density.columns.size(), 1u + 6u);
  EXPECT_TRUE(fs::exists(dir / "trajectory.json"));
}

TEST(RunExperiment, SweepWritesInConfigOrder) {
  const auto dir = scratch("sweep");
  const auto cfg = parse_config(R"({"experiment": "sweep", "sweep": {"parameter": "physics.mu",
                                    "values": [1.0, 0.0, 0.5, 0.25]}, "run": {"steps": 300}})");
  const auto result = run_experiment(cfg, {dir, {}, {}});
  ASSERT_EQ(result.exit_code, kExitOk) << result.error.dump();
  const auto summary = read_table(dir / "sweep.csv");
  ASSERT_EQ(summary.rows.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(summary.rows[i][0], static_cast<double>(i));
    EXPECT_EQ(summary.rows[i][1], cfg.sweep.values[i]);
    char name[32];
    std::snprintf(name, sizeof name, "trajectory_%03zu.csv", i);
    ASSERT_TRUE(fs::exists(dir / name));
    // Each point equals a standalone run with that parameter.
    auto single = with_parameter(cfg, cfg.sweep.parameter, cfg.sweep.values[i]);
    EXPECT_TRUE(same_values(read_table(dir / name), trajectory_table(run_quantum_learner(single))));
  }
  EXPECT_EQ(summary.rows[1][6], 1.0);  // mu = 0 never converges
}

TEST(RunExperiment, DivergenceWritesPartialData) {
  const auto dir = scratch("diverge");
  const auto cfg = parse_config(R"({"experiment": "learn", "potential": {"omega": 1.5}, "run": {"steps": 1000}})");
  const auto result = run_experiment(cfg, {dir, {}, {}});
  EXPECT_EQ(result.exit_code, kExitDiverged);
  EXPECT_TRUE(fs::exists(dir / "trajectory.csv"));
  EXPECT_TRUE(fs::exists(dir / "meta.json"));
  EXPECT_EQ(read_json(dir / "error.json")["kind"], "divergence");
}

TEST(RunExperiment, ByteIdenticalReruns) {
  const auto a = scratch("rerun_a");
  const auto b = scratch("rerun_b");
  const auto cfg = parse_config(R"({"experiment": "evolve", "run": {"t_final": 2}, "initial": {"kind": "coherent"}})");
  ASSERT_EQ(run_experiment(cfg, {a, {}, {}}).exit_code, kExitOk);
  ASSERT_EQ(run_experiment(cfg, {b, {}, {}}).exit_code, kExitOk);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    if (name == "meta.json") {
      auto ma = read_json(a / name);
      auto mb = read_json(b / name);
      ma.erase("wall_time_s");
      mb.erase("wall_time_s");
      ma["config"]["output"].erase("dir");
      mb["config"]["output"].erase("dir");
      EXPECT_EQ(ma, mb);
    } else {
      EXPECT_EQ(read_text(a / name), read_text(b / name)) << name;
    }
  }
}

TEST(RunExperiment, MetadataAloneReproducesRun) {
  const auto a = scratch("meta_a");
  const auto b = scratch("meta_b");
  const auto cfg = parse_config(R"({"experiment": "learn", "physics": {"mu": 0.4}, "potential": {"omega": 0.8}})");
  ASSERT_EQ(run_experiment(cfg, {a, {}, {}}).exit_code, kExitOk);
  const auto replay = parse_config(read_json(a / "meta.json")["config"].dump());
  EXPECT_TRUE(replay == [&] {
    auto c = cfg;
    c.output.dir = a.string();
    return c;
  }());
  ASSERT_EQ(run_experiment(replay, {b, {}, {}}).exit_code, kExitOk);
  EXPECT_EQ(read_text(a / "trajectory.csv"), read_text(b / "trajectory.csv"));
}

TEST(RunExperiment, ConfigFailureReportsMachineReadably) {
  const auto dir = scratch("badcfg");
  auto cfg = parse_config(R"({"experiment": "learn"})");
  cfg.run.steps = -3;
  const auto result = run_experiment(cfg, {dir, {}, {}});
  EXPECT_EQ(result.exit_code, kExitConfig);
  EXPECT_EQ(read_json(dir / "error.json")["kind"], "config");
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  const auto ok = (dir / "ok").string();
  EXPECT_EQ(run_cli("figure1 --quiet --out " + ok), 0);
  EXPECT_TRUE(fs::exists(dir / "ok" / "trajectory.csv"));
  EXPECT_EQ(run_cli("learn --quiet --format json --seed 3 --out " + (dir / "json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "json" / "trajectory.json"));
  EXPECT_EQ(read_json(dir / "json" / "meta.json")["seed"], 3);

  write_text(dir / "bad.json", R"({"physics": {"m": 0}})");
  EXPECT_EQ(run_cli("learn --config " + (dir / "bad.json").string() + " --out " + (dir / "bad").string()), 2);
  EXPECT_EQ(run_cli("learn --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("teleport"), 2);

  write_text(dir / "div.json", R"({"potential": {"omega": 1.5}, "run": {"steps": 1000}})");
  EXPECT_EQ(run_cli("learn --quiet --config " + (dir / "div.json").string() + " --out " + (dir / "div").string()), 4);
  EXPECT_TRUE(fs::exists(dir / "div" / "trajectory.csv"));

  // The learner leaves the disruptor grid, which is a numerical failure.
  write_text(dir / "num.json", R"({"grid": {"x_min": -8, "x_max": 8, "n": 128},
      "potential": {"omega": 1.5}, "initial": {"kind": "coherent", "x0": -5},
      "disruptor": {"kind": "field_sampled", "substeps": 5}, "run": {"steps": 100}})");
  EXPECT_EQ(run_cli("learn --quiet --config " + (dir / "num.json").string() + " --out " + (dir / "num").string()), 3);
  EXPECT_EQ(read_json(dir / "num" / "error.json")["kind"], "numerical");
}

TEST(ShippedConfigs, AllParse) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(QLEARN_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(parse_config(read_text(entry.path()))) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5u);
}
