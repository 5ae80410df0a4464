// Command-line experiment runner.
//
//   qlearn <learn|evolve|compare|figure1|sweep> [--config file.json] [--out dir]
//          [--format csv|json] [--seed N] [--quiet]

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "qlearn/harness/config.hpp"
#include "qlearn/harness/experiment.hpp"
#include "qlearn/harness/table.hpp"

namespace h = qlearn::harness;

int main(int argc, char** argv) {
  CLI::App app{"Dissipative quantum learner: trajectories, Kostin evolution and Figure-1 data"};
  app.set_version_flag("--version", std::string(QLEARN_VERSION));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<std::int64_t> seed;
  bool quiet = false;

  const std::pair<const char*, const char*> commands[] = {
      {"learn", "iterate the quantum learning update"},
      {"evolve", "propagate the dissipative Schrodinger equation"},
      {"compare", "quantum learner vs. classical momentum gradient descent"},
      {"figure1", "learner trajectory plus density snapshots from x0 = -5"},
      {"sweep", "learner runs over a list of parameter values"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON experiment document")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--format", format, "data file format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "reserved; all experiments are deterministic");
    sub->add_flag("--quiet", quiet, "suppress the summary on stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kExitConfig;
  }

  const auto* sub = app.get_subcommands().front();
  const auto kind = *h::parse_experiment_kind(sub->get_name());

  auto report = [](const nlohmann::json& err) { std::cerr << err.dump() << std::endl; };

  h::ExperimentConfig cfg;
  try {
    const std::string text = config_path.empty() ? std::string("{}") : h::read_text(config_path);
    cfg = h::parse_config(text, kind);
  } catch (const h::ConfigError& e) {
    nlohmann::json err = {{"status", "error"},
                          {"kind", "config"},
                          {"reason", h::to_string(e.kind())},
                          {"field", e.field()},
                          {"message", e.what()},
                          {"exit_code", static_cast<int>(h::kExitConfig)}};
    report(err);
    return h::kExitConfig;
  } catch (const h::IoError& e) {
    report({{"status", "error"}, {"kind", "io"}, {"message", e.what()}, {"exit_code", static_cast<int>(h::kExitIo)}});
    return h::kExitIo;
  }

  h::RunOptions opts;
  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (!format.empty()) opts.format = format == "json" ? h::OutputFormat::json : h::OutputFormat::csv;
  opts.seed = seed;

  const auto result = h::run_experiment(cfg, opts);
  if (!result.error.is_null()) report(result.error);
  if (!quiet) {
    std::cout << sub->get_name() << ": " << result.meta.value("status", "error") << " -> "
              << result.out_dir.string() << "\n";
    if (result.meta.contains("summary")) std::cout << result.meta["summary"].dump(2) << "\n";
  }
  return result.exit_code;
}
