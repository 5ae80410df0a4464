#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlearn/derivative.hpp"
#include "qlearn/dynamics.hpp"
#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/potential.hpp"

namespace qlearn::harness {

using json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { syntax, unknown_key, invalid_value };

  ConfigError(Kind kind, std::string field, const std::string& message)
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  Kind kind() const noexcept { return kind_; }
  /// Dotted path of the offending entry, empty for syntax errors.
  const std::string& field() const noexcept { return field_; }

 private:
  Kind kind_;
  std::string field_;
};

inline std::string_view to_string(ConfigError::Kind k) {
  switch (k) {
    case ConfigError::Kind::syntax: return "syntax";
    case ConfigError::Kind::unknown_key: return "unknown_key";
    case ConfigError::Kind::invalid_value: return "invalid_value";
  }
  return "unknown";
}

enum class ExperimentKind { learn, evolve, compare, figure1, sweep };
enum class OutputFormat { csv, json };

inline std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::learn: return "learn";
    case ExperimentKind::evolve: return "evolve";
    case ExperimentKind::compare: return "compare";
    case ExperimentKind::figure1: return "figure1";
    case ExperimentKind::sweep: return "sweep";
  }
  return "unknown";
}

inline std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

inline std::optional<ExperimentKind> parse_experiment_kind(std::string_view s) {
  if (s == "learn") return ExperimentKind::learn;
  if (s == "evolve") return ExperimentKind::evolve;
  if (s == "compare") return ExperimentKind::compare;
  if (s == "figure1") return ExperimentKind::figure1;
  if (s == "sweep") return ExperimentKind::sweep;
  return std::nullopt;
}

struct GridConfig {
  double x_min = -20.0;
  double x_max = 20.0;
  std::int64_t n = 2048;
  bool periodic = true;
};

struct PhysicsConfig {
  double m = 1.0;
  double hbar = 1.0;
  double mu = 1.0;
  double time_scale = 1.0;
};

struct PotentialConfig {
  PotentialKind kind = PotentialKind::harmonic;
  double omega = 1.0;
  double k = 1.0;
  std::vector<double> coefficients;
  std::vector<std::pair<double, double>> table;
  double h_v = 1e-5;
};

enum class InitialKind { gaussian, coherent, table };

inline std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::coherent: return "coherent";
    case InitialKind::table: return "table";
  }
  return "unknown";
}

struct InitialRow {
  double x, re, im;
};

struct InitialConfig {
  InitialKind kind = InitialKind::gaussian;
  double x0 = -5.0;
  double u0 = 0.0;
  double p0 = 0.0;
  double s0 = 0.0;
  /// Density standard deviation of the gaussian kind.
  double sigma = 0.0;
  /// Trap frequency of the coherent kind.
  double omega = 0.0;
  std::vector<InitialRow> table;
};

struct RunConfig {
  std::int64_t steps = 200;
  double stop_tol = 1e-8;
  double t_final = 20.0;
  double dt = 1e-2;
  std::int64_t snapshot_every = 100;
  PropagationScheme scheme = PropagationScheme::split_step_spectral;
  DerivativeScheme derivative = DerivativeScheme::central;
};

enum class DisruptorKind { zero, field_sampled };

struct DisruptorConfig {
  DisruptorKind kind = DisruptorKind::zero;
  std::int64_t substeps = 100;
};

struct SweepConfig {
  std::string parameter = "physics.mu";
  std::vector<double> values;
};

struct OutputConfig {
  std::string dir = "out";
  OutputFormat format = OutputFormat::csv;
};

/// Fully defaulted and validated experiment description.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::figure1;
  GridConfig grid;
  PhysicsConfig physics;
  PotentialConfig potential;
  InitialConfig initial;
  RunConfig run;
  DisruptorConfig disruptor;
  SweepConfig sweep;
  OutputConfig output;

  SpatialGrid make_grid() const { return build_grid(grid.x_min, grid.x_max, grid.n, grid.periodic); }
  PhysicsParams make_physics() const { return {physics.m, physics.hbar, physics.mu}; }

  PotentialSpec make_potential() const {
    switch (potential.kind) {
      case PotentialKind::harmonic: return PotentialSpec::harmonic(potential.omega);
      case PotentialKind::quartic: return PotentialSpec::quartic(potential.k);
      case PotentialKind::polynomial: return PotentialSpec::polynomial(potential.coefficients);
      case PotentialKind::tabulated: {
        std::vector<double> xs, vs;
        for (const auto& [x, v] : potential.table) {
          xs.push_back(x);
          vs.push_back(v);
        }
        return PotentialSpec::tabulated(std::move(xs), std::move(vs), potential.h_v);
      }
    }
    throw DomainError("unknown potential kind");
  }

  PropagatorConfig make_propagator() const { return {run.dt, run.scheme, run.t_final, run.snapshot_every}; }
};

/// Names accepted by the sweep section.
inline const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"physics.m",   "physics.hbar", "physics.mu", "physics.time_scale",
                                              "potential.omega", "initial.x0", "initial.u0"};
  return names;
}

/// Returns a copy of `cfg` with the named sweep parameter set to `value`.
inline ExperimentConfig with_parameter(ExperimentConfig cfg, std::string_view name, double value) {
  if (name == "physics.m") {
    cfg.physics.m = value;
  } else if (name == "physics.hbar") {
    cfg.physics.hbar = value;
  } else if (name == "physics.mu") {
    cfg.physics.mu = value;
  } else if (name == "physics.time_scale") {
    cfg.physics.time_scale = value;
  } else if (name == "potential.omega") {
    cfg.potential.omega = value;
  } else if (name == "initial.x0") {
    cfg.initial.x0 = value;
  } else if (name == "initial.u0") {
    cfg.initial.u0 = value;
  } else {
    throw ConfigError(ConfigError::Kind::invalid_value, "sweep.parameter",
                      "sweep.parameter '" + std::string(name) + "' is not sweepable");
  }
  return cfg;
}

namespace detail {

class SectionReader {
 public:
  SectionReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) invalid(path_, "must be an object");
  }

  /// Rejects every key not in `allowed`.
  void restrict_to(std::initializer_list<std::string_view> allowed) const {
    for (const auto& [key, value] : obj_.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) {
        throw ConfigError(ConfigError::Kind::unknown_key, qualified(key), "unknown key '" + qualified(key) + "'");
      }
    }
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  void number(const std::string& key, double& out) const {
    if (!has(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number()) invalid(qualified(key), "must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) invalid(qualified(key), "must be finite");
  }

  void integer(const std::string& key, std::int64_t& out) const {
    if (!has(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer()) invalid(qualified(key), "must be an integer");
    out = v.get<std::int64_t>();
  }

  void boolean(const std::string& key, bool& out) const {
    if (!has(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_boolean()) invalid(qualified(key), "must be true or false");
    out = v.get<bool>();
  }

  void string(const std::string& key, std::string& out) const {
    if (!has(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_string()) invalid(qualified(key), "must be a string");
    out = v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const auto& v = obj_.at(key);
    if (!v.is_array()) invalid(qualified(key), "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) invalid(qualified(key), "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::vector<double>> rows(const std::string& key, std::size_t width) const {
    const auto& v = obj_.at(key);
    const std::string what = "must be an array of " + std::to_string(width) + "-element numeric rows";
    if (!v.is_array()) invalid(qualified(key), what);
    std::vector<std::vector<double>> out;
    for (const auto& row : v) {
      if (!row.is_array() || row.size() != width) invalid(qualified(key), what);
      std::vector<double> r;
      for (const auto& e : row) {
        if (!e.is_number()) invalid(qualified(key), what);
        r.push_back(e.get<double>());
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  std::string qualified(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  [[noreturn]] static void invalid(const std::string& field, const std::string& what) {
    throw ConfigError(ConfigError::Kind::invalid_value, field, field + " " + what);
  }

 private:
  const json& obj_;
  std::string path_;
};

inline const json& section(const json& root, const std::string& key) {
  static const json empty = json::object();
  return root.contains(key) ? root.at(key) : empty;
}

template <class Enum, class Parse>
Enum parse_enum(const SectionReader& r, const std::string& key, Enum fallback, Parse parse) {
  std::string s;
  r.string(key, s);
  if (s.empty() && !r.has(key)) return fallback;
  auto e = parse(s);
  if (!e) SectionReader::invalid(r.qualified(key), "has unsupported value '" + s + "'");
  return *e;
}

// Wraps library precondition errors as config errors. Library messages that
// start with a dotted key ("physics.mu must ...") name the field themselves;
// otherwise `section` is reported.
template <class F>
void check(const std::string& section, F&& f) {
  try {
    f();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    const auto space = msg.find(' ');
    const std::string head = msg.substr(0, space);
    const bool dotted = head.find('.') != std::string::npos && head.rfind(section + ".", 0) == 0;
    throw ConfigError(ConfigError::Kind::invalid_value, dotted ? head : section, msg);
  }
}

}  // namespace detail

/// Validates the numeric invariants of a config without running anything.
inline void validate(const ExperimentConfig& cfg) {
  using detail::check;
  std::optional<SpatialGrid> maybe_grid;
  check("grid", [&] { maybe_grid = cfg.make_grid(); });
  const SpatialGrid grid = *maybe_grid;
  check("physics", [&] { (void)cfg.make_physics(); });
  if (!(cfg.physics.time_scale > 0.0)) {
    throw ConfigError(ConfigError::Kind::invalid_value, "physics.time_scale", "physics.time_scale must be > 0");
  }
  check("potential", [&] { (void)cfg.make_potential(); });
  if (cfg.run.steps < 1) throw ConfigError(ConfigError::Kind::invalid_value, "run.steps", "run.steps must be >= 1");
  if (!(cfg.run.stop_tol >= 0.0)) {
    throw ConfigError(ConfigError::Kind::invalid_value, "run.stop_tol", "run.stop_tol must be >= 0");
  }
  if (cfg.run.derivative == DerivativeScheme::spectral && !grid.periodic()) {
    throw ConfigError(ConfigError::Kind::invalid_value, "run.derivative",
                      "run.derivative = spectral requires a periodic grid");
  }
  const bool propagates = cfg.experiment == ExperimentKind::evolve || cfg.experiment == ExperimentKind::figure1 ||
                          cfg.disruptor.kind == DisruptorKind::field_sampled;
  if (propagates) {
    check("run", [&] { cfg.make_propagator().validate(grid); });
    if (cfg.physics.hbar == 0.0 &&
        (cfg.experiment == ExperimentKind::evolve || cfg.experiment == ExperimentKind::figure1)) {
      throw ConfigError(ConfigError::Kind::invalid_value, "physics.hbar",
                        "physics.hbar must be > 0 for wavefunction evolution");
    }
  }
  if (cfg.disruptor.substeps < 1) {
    throw ConfigError(ConfigError::Kind::invalid_value, "disruptor.substeps", "disruptor.substeps must be >= 1");
  }
  if (cfg.initial.kind == InitialKind::gaussian && !(cfg.initial.sigma > 0.0)) {
    throw ConfigError(ConfigError::Kind::invalid_value, "initial.sigma", "initial.sigma must be > 0");
  }
  if (cfg.initial.kind == InitialKind::coherent && !(cfg.initial.omega > 0.0)) {
    throw ConfigError(ConfigError::Kind::invalid_value, "initial.omega", "initial.omega must be > 0");
  }
  if (cfg.initial.kind == InitialKind::table && cfg.initial.table.size() < 2) {
    throw ConfigError(ConfigError::Kind::invalid_value, "initial.table", "initial.table needs at least two rows");
  }
  if (cfg.experiment == ExperimentKind::sweep) {
    if (cfg.sweep.values.empty()) {
      throw ConfigError(ConfigError::Kind::invalid_value, "sweep.values", "sweep.values must not be empty");
    }
    for (double v : cfg.sweep.values) {
      auto point = with_parameter(cfg, cfg.sweep.parameter, v);
      point.experiment = ExperimentKind::learn;
      try {
        validate(point);
      } catch (const ConfigError& e) {
        throw ConfigError(e.kind(), e.field(), "sweep value " + std::to_string(v) + ": " + e.what());
      }
    }
  }
}

/// Parses a JSON experiment document, fills defaults and validates it.
///
/// `experiment_override` (the CLI subcommand) supplies the experiment tag; a
/// document that names a different experiment is rejected.
inline ExperimentConfig parse_config(std::string_view text,
                                     std::optional<ExperimentKind> experiment_override = std::nullopt) {
  using detail::SectionReader;
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::syntax, "", std::string("config syntax error: ") + e.what());
  }
  if (root.is_null()) root = json::object();

  ExperimentConfig cfg;
  SectionReader top(root, "");
  top.restrict_to({"experiment", "grid", "physics", "potential", "initial", "run", "disruptor", "sweep", "output"});

  if (top.has("experiment")) {
    cfg.experiment = detail::parse_enum(top, "experiment", ExperimentKind::figure1, parse_experiment_kind);
    if (experiment_override && *experiment_override != cfg.experiment) {
      throw ConfigError(ConfigError::Kind::invalid_value, "experiment",
                        "config experiment '" + std::string(to_string(cfg.experiment)) +
                            "' does not match subcommand '" + std::string(to_string(*experiment_override)) + "'");
    }
  } else if (experiment_override) {
    cfg.experiment = *experiment_override;
  } else {
    throw ConfigError(ConfigError::Kind::invalid_value, "experiment", "experiment is required");
  }

  {
    SectionReader r(detail::section(root, "grid"), "grid");
    r.restrict_to({"x_min", "x_max", "n", "periodic"});
    r.number("x_min", cfg.grid.x_min);
    r.number("x_max", cfg.grid.x_max);
    r.integer("n", cfg.grid.n);
    r.boolean("periodic", cfg.grid.periodic);
  }
  {
    SectionReader r(detail::section(root, "physics"), "physics");
    r.restrict_to({"m", "hbar", "mu", "time_scale"});
    r.number("m", cfg.physics.m);
    r.number("hbar", cfg.physics.hbar);
    r.number("mu", cfg.physics.mu);
    r.number("time_scale", cfg.physics.time_scale);
    if (!(cfg.physics.m > 0.0)) SectionReader::invalid("physics.m", "must be > 0");
  }
  {
    SectionReader r(detail::section(root, "potential"), "potential");
    auto& p = cfg.potential;
    p.kind = detail::parse_enum(r, "kind", PotentialKind::harmonic, [](std::string_view s) -> std::optional<PotentialKind> {
      if (s == "harmonic") return PotentialKind::harmonic;
      if (s == "quartic") return PotentialKind::quartic;
      if (s == "polynomial") return PotentialKind::polynomial;
      if (s == "tabulated") return PotentialKind::tabulated;
      return std::nullopt;
    });
    switch (p.kind) {
      case PotentialKind::harmonic:
        r.restrict_to({"kind", "omega"});
        r.number("omega", p.omega);
        break;
      case PotentialKind::quartic:
        r.restrict_to({"kind", "k"});
        r.number("k", p.k);
        break;
      case PotentialKind::polynomial:
        r.restrict_to({"kind", "coefficients"});
        if (!r.has("coefficients")) SectionReader::invalid("potential.coefficients", "is required for polynomial");
        p.coefficients = r.numbers("coefficients");
        break;
      case PotentialKind::tabulated:
        r.restrict_to({"kind", "table", "h_v"});
        if (!r.has("table")) SectionReader::invalid("potential.table", "is required for tabulated");
        for (const auto& row : r.rows("table", 2)) p.table.emplace_back(row[0], row[1]);
        r.number("h_v", p.h_v);
        break;
    }
  }
  {
    SectionReader r(detail::section(root, "initial"), "initial");
    auto& in = cfg.initial;
    in.kind = detail::parse_enum(r, "kind", InitialKind::gaussian, [](std::string_view s) -> std::optional<InitialKind> {
      if (s == "gaussian") return InitialKind::gaussian;
      if (s == "coherent") return InitialKind::coherent;
      if (s == "table") return InitialKind::table;
      return std::nullopt;
    });
    const double trap = cfg.potential.kind == PotentialKind::harmonic ? cfg.potential.omega : 1.0;
    switch (in.kind) {
      case InitialKind::gaussian:
        r.restrict_to({"kind", "x0", "u0", "p0", "sigma"});
        in.sigma = trap > 0.0 ? 1.0 / std::sqrt(2.0 * trap) : 0.0;
        r.number("sigma", in.sigma);
        break;
      case InitialKind::coherent:
        r.restrict_to({"kind", "x0", "u0", "p0", "s0", "omega"});
        in.omega = trap;
        r.number("s0", in.s0);
        r.number("omega", in.omega);
        break;
      case InitialKind::table:
        r.restrict_to({"kind", "x0", "u0", "table"});
        if (!r.has("table")) SectionReader::invalid("initial.table", "is required for table");
        for (const auto& row : r.rows("table", 3)) in.table.push_back({row[0], row[1], row[2]});
        break;
    }
    r.number("x0", in.x0);
    r.number("u0", in.u0);
    if (in.kind != InitialKind::table) r.number("p0", in.p0);
  }
  {
    SectionReader r(detail::section(root, "run"), "run");
    r.restrict_to({"steps", "stop_tol", "t_final", "dt", "snapshot_every", "scheme", "derivative"});
    r.integer("steps", cfg.run.steps);
    r.number("stop_tol", cfg.run.stop_tol);
    r.number("t_final", cfg.run.t_final);
    r.number("dt", cfg.run.dt);
    r.integer("snapshot_every", cfg.run.snapshot_every);
    cfg.run.scheme = detail::parse_enum(r, "scheme", PropagationScheme::split_step_spectral,
                                        [](std::string_view s) -> std::optional<PropagationScheme> {
                                          if (s == "split_step_spectral") return PropagationScheme::split_step_spectral;
                                          if (s == "crank_nicolson") return PropagationScheme::crank_nicolson;
                                          return std::nullopt;
                                        });
    cfg.run.derivative = detail::parse_enum(r, "derivative", DerivativeScheme::central,
                                            [](std::string_view s) -> std::optional<DerivativeScheme> {
                                              if (s == "central") return DerivativeScheme::central;
                                              if (s == "spectral") return DerivativeScheme::spectral;
                                              return std::nullopt;
                                            });
  }
  {
    SectionReader r(detail::section(root, "disruptor"), "disruptor");
    cfg.disruptor.kind = detail::parse_enum(r, "kind", DisruptorKind::zero,
                                            [](std::string_view s) -> std::optional<DisruptorKind> {
                                              if (s == "zero") return DisruptorKind::zero;
                                              if (s == "field_sampled") return DisruptorKind::field_sampled;
                                              return std::nullopt;
                                            });
    if (cfg.disruptor.kind == DisruptorKind::zero) {
      r.restrict_to({"kind"});
    } else {
      r.restrict_to({"kind", "substeps"});
      r.integer("substeps", cfg.disruptor.substeps);
    }
  }
  if (root.contains("sweep")) {
    if (cfg.experiment != ExperimentKind::sweep) {
      throw ConfigError(ConfigError::Kind::unknown_key, "sweep", "section 'sweep' is only valid for experiment sweep");
    }
    SectionReader r(root.at("sweep"), "sweep");
    r.restrict_to({"parameter", "values"});
    r.string("parameter", cfg.sweep.parameter);
    if (r.has("values")) cfg.sweep.values = r.numbers("values");
    bool known = false;
    for (const auto& name : sweep_parameters()) known = known || name == cfg.sweep.parameter;
    if (!known) SectionReader::invalid("sweep.parameter", "has unsupported value '" + cfg.sweep.parameter + "'");
  }
  {
    SectionReader r(detail::section(root, "output"), "output");
    r.restrict_to({"dir", "format"});
    r.string("dir", cfg.output.dir);
    cfg.output.format = detail::parse_enum(r, "format", OutputFormat::csv,
                                           [](std::string_view s) -> std::optional<OutputFormat> {
                                             if (s == "csv") return OutputFormat::csv;
                                             if (s == "json") return OutputFormat::json;
                                             return std::nullopt;
                                           });
  }

  validate(cfg);
  return cfg;
}

/// Effective configuration as a document that parse_config accepts and that
/// reproduces `cfg` exactly.
inline json to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.experiment);
  j["grid"] = {{"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max}, {"n", cfg.grid.n}, {"periodic", cfg.grid.periodic}};
  j["physics"] = {{"m", cfg.physics.m},
                  {"hbar", cfg.physics.hbar},
                  {"mu", cfg.physics.mu},
                  {"time_scale", cfg.physics.time_scale}};
  json pot = {{"kind", to_string(cfg.potential.kind)}};
  switch (cfg.potential.kind) {
    case PotentialKind::harmonic: pot["omega"] = cfg.potential.omega; break;
    case PotentialKind::quartic: pot["k"] = cfg.potential.k; break;
    case PotentialKind::polynomial: pot["coefficients"] = cfg.potential.coefficients; break;
    case PotentialKind::tabulated: {
      json rows = json::array();
      for (const auto& [x, v] : cfg.potential.table) rows.push_back({x, v});
      pot["table"] = rows;
      pot["h_v"] = cfg.potential.h_v;
      break;
    }
  }
  j["potential"] = pot;
  json in = {{"kind", to_string(cfg.initial.kind)}, {"x0", cfg.initial.x0}, {"u0", cfg.initial.u0}};
  switch (cfg.initial.kind) {
    case InitialKind::gaussian:
      in["p0"] = cfg.initial.p0;
      in["sigma"] = cfg.initial.sigma;
      break;
    case InitialKind::coherent:
      in["p0"] = cfg.initial.p0;
      in["s0"] = cfg.initial.s0;
      in["omega"] = cfg.initial.omega;
      break;
    case InitialKind::table: {
      json rows = json::array();
      for (const auto& r : cfg.initial.table) rows.push_back({r.x, r.re, r.im});
      in["table"] = rows;
      break;
    }
  }
  j["initial"] = in;
  j["run"] = {{"steps", cfg.run.steps},
              {"stop_tol", cfg.run.stop_tol},
              {"t_final", cfg.run.t_final},
              {"dt", cfg.run.dt},
              {"snapshot_every", cfg.run.snapshot_every},
              {"scheme", to_string(cfg.run.scheme)},
              {"derivative", to_string(cfg.run.derivative)}};
  json dis = {{"kind", cfg.disruptor.kind == DisruptorKind::zero ? "zero" : "field_sampled"}};
  if (cfg.disruptor.kind == DisruptorKind::field_sampled) dis["substeps"] = cfg.disruptor.substeps;
  j["disruptor"] = dis;
  if (cfg.experiment == ExperimentKind::sweep) {
    j["sweep"] = {{"parameter", cfg.sweep.parameter}, {"values", cfg.sweep.values}};
  }
  j["output"] = {{"dir", cfg.output.dir}, {"format", to_string(cfg.output.format)}};
  return j;
}

inline bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) { return to_json(a) == to_json(b); }

}  // namespace qlearn::harness
