#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlearn/dynamics.hpp"
#include "qlearn/error.hpp"
#include "qlearn/hydrodynamics.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/potential.hpp"
#include "qlearn/wavefunction.hpp"

namespace qlearn {

/// Discrete trajectory point: step index, position x_t, update u_t and the
/// disruptor value applied on the step that produced it.
struct LearnerState {
  std::int64_t t = 0;
  double x = 0.0;
  double u = 0.0;
  double dis_last = 0.0;

  friend bool operator==(const LearnerState&, const LearnerState&) = default;
};

/// Disruptor sampled from a wavefunction evolved alongside the learner.
///
/// Every call to sample() first advances the owned Kostin evolution by one
/// macro-step (substeps * dt) and then evaluates the disruptor field of the
/// current amplitude at x. With hbar = 0 the disruptor is identically zero
/// and the Schrodinger evolution, which is undefined there, is not run.
class FieldSampledDisruptor {
 public:
  FieldSampledDisruptor(Wavefunction psi0, const PotentialSpec& potential, const PhysicsParams& params,
                        double macro_step = 1.0, std::int64_t substeps = 100,
                        PropagationScheme scheme = PropagationScheme::split_step_spectral,
                        DerivativeScheme derivative = DerivativeScheme::central)
      : psi_(std::move(psi0)), params_(params), derivative_(derivative), substeps_(substeps) {
    if (substeps < 1) throw DomainError("disruptor.substeps must be >= 1");
    if (!(macro_step > 0.0)) throw DomainError("disruptor macro-step must be > 0");
    if (params.hbar() > 0.0) {
      propagator_ = std::make_unique<KostinPropagator>(psi_.grid(), potential, params,
                                                       macro_step / static_cast<double>(substeps), scheme);
    }
  }

  double sample(std::int64_t step, double x) {
    if (!propagator_) return 0.0;
    for (std::int64_t k = 0; k < substeps_; ++k) {
      try {
        propagator_->step(psi_);
      } catch (const NumericalError& e) {
        throw NumericalError(std::string("disruptor field evolution failed: ") + e.what(), step);
      }
    }
    const auto field = disruptor_field(amplitude_field(psi_), params_, derivative_);
    if (!field.grid.contains(x)) {
      throw DomainError("learner position " + std::to_string(x) + " left the disruptor grid at step " +
                        std::to_string(step));
    }
    return disruptor_at(field, x);
  }

  const Wavefunction& wavefunction() const noexcept { return psi_; }

 private:
  Wavefunction psi_;
  PhysicsParams params_;
  DerivativeScheme derivative_;
  std::int64_t substeps_;
  std::unique_ptr<KostinPropagator> propagator_;
};

/// Source of the quantum disruptor term consumed by quantum_learn_step.
class DisruptorSource {
 public:
  enum class Kind { zero, field_sampled, callback };
  using Callback = std::function<double(std::int64_t step, double x)>;

  static DisruptorSource zero() { return DisruptorSource(Kind::zero); }

  static DisruptorSource callback(Callback fn) {
    if (!fn) throw DomainError("callback disruptor requires a callable");
    DisruptorSource s(Kind::callback);
    s.callback_ = std::move(fn);
    return s;
  }

  static DisruptorSource field_sampled(FieldSampledDisruptor sampler) {
    DisruptorSource s(Kind::field_sampled);
    s.field_ = std::make_unique<FieldSampledDisruptor>(std::move(sampler));
    return s;
  }

  Kind kind() const noexcept { return kind_; }

  /// Disruptor at position x for the step leaving step index `step`.
  double sample(std::int64_t step, double x) {
    switch (kind_) {
      case Kind::zero: return 0.0;
      case Kind::callback: return callback_(step, x);
      case Kind::field_sampled: return field_->sample(step, x);
    }
    return 0.0;
  }

  const FieldSampledDisruptor* field() const noexcept { return field_.get(); }

 private:
  explicit DisruptorSource(Kind k) : kind_(k) {}

  Kind kind_;
  Callback callback_;
  std::unique_ptr<FieldSampledDisruptor> field_;
};

inline std::string_view to_string(DisruptorSource::Kind k) {
  switch (k) {
    case DisruptorSource::Kind::zero: return "zero";
    case DisruptorSource::Kind::field_sampled: return "field_sampled";
    case DisruptorSource::Kind::callback: return "callback";
  }
  return "unknown";
}

namespace detail {

inline double checked_gradient(const PotentialSpec& objective, const LearnerState& state) {
  const double g = objective.gradient(state.x);
  if (!std::isfinite(g)) {
    throw NumericalError("non-finite gradient at x = " + std::to_string(state.x), state.t);
  }
  return g;
}

}  // namespace detail

/// Heavy-ball momentum gradient descent:
///   u_{t} = beta u_{t-1} - alpha grad f(x_t),  x_{t+1} = x_t + u_t.
/// The gradient is taken at the current position before moving.
inline LearnerState momentum_gd_step(const LearnerState& state, const PotentialSpec& objective, double alpha,
                                     double beta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("beta must lie in [0, 1]");
  const double g = detail::checked_gradient(objective, state);
  LearnerState next;
  next.t = state.t + 1;
  next.u = beta * state.u - alpha * g;
  next.x = state.x + next.u;
  next.dis_last = 0.0;
  return next;
}

/// Disrupted quantum learning update
///   u_{t} = beta u_{t-1} - lambda grad V(x_t) + Dis_t(x_t),  x_{t+1} = x_t + u_t,
/// with beta = 1 - mu and lambda = 1/m. `time_scale` multiplies both the
/// drive terms and the position update; at its default of 1 the step reduces
/// bit-for-bit to momentum_gd_step when Dis = 0.
inline LearnerState quantum_learn_step(const LearnerState& state, const PotentialSpec& potential,
                                       DisruptorSource& dis, const PhysicsParams& params,
                                       double time_scale = 1.0) {
  if (!std::isfinite(time_scale) || !(time_scale > 0.0)) throw DomainError("physics.time_scale must be > 0");
  const double g = detail::checked_gradient(potential, state);
  const double d = dis.sample(state.t, state.x);
  if (!std::isfinite(d)) throw NumericalError("non-finite disruptor value", state.t);
  LearnerState next;
  next.t = state.t + 1;
  next.u = params.beta() * state.u - time_scale * params.lambda() * g + time_scale * d;
  next.x = state.x + time_scale * next.u;
  next.dis_last = d;
  return next;
}

/// One row of a learner trajectory.
struct TrajectoryRow {
  double t;
  double x;
  double u;
  double V;
  double dis;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

enum class RunOutcome { converged, max_steps, diverged };

inline std::string_view to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::converged: return "converged";
    case RunOutcome::max_steps: return "max_steps";
    case RunOutcome::diverged: return "diverged";
  }
  return "unknown";
}

struct LearnerRun {
  std::vector<TrajectoryRow> rows;
  RunOutcome outcome = RunOutcome::max_steps;
};

/// |x| beyond this is reported as divergence.
inline constexpr double kDivergenceBound = 1e6;

struct LearnerOptions {
  std::int64_t steps = 200;
  double stop_tol = 1e-8;
  double time_scale = 1.0;
};

namespace detail {

template <class Step>
LearnerRun iterate_learner(double x0, double u0, const PotentialSpec& potential, const LearnerOptions& opts,
                           Step&& step) {
  if (opts.steps < 1) throw DomainError("run.steps must be >= 1");
  if (!(opts.stop_tol >= 0.0)) throw DomainError("run.stop_tol must be >= 0");
  LearnerRun run;
  run.rows.reserve(static_cast<std::size_t>(opts.steps) + 1);
  LearnerState s{0, x0, u0, 0.0};
  auto push = [&](const LearnerState& st) {
    run.rows.push_back({static_cast<double>(st.t), st.x, st.u, potential.value(st.x), st.dis_last});
  };
  auto converged = [&](const LearnerState& st) {
    return std::abs(potential.gradient(st.x)) < opts.stop_tol && std::abs(st.u) < opts.stop_tol;
  };
  push(s);
  if (converged(s)) {
    run.outcome = RunOutcome::converged;
    return run;
  }
  for (std::int64_t k = 0; k < opts.steps; ++k) {
    s = step(s);
    if (!std::isfinite(s.x) || std::abs(s.x) > kDivergenceBound) {
      if (std::isfinite(s.x)) push(s);
      run.outcome = RunOutcome::diverged;
      return run;
    }
    push(s);
    if (converged(s)) {
      run.outcome = RunOutcome::converged;
      return run;
    }
  }
  run.outcome = RunOutcome::max_steps;
  return run;
}

}  // namespace detail

/// Iterates quantum_learn_step from (x0, u0). The first row is the initial
/// state; the run stops early once |grad V(x)| and |u| both drop below
/// stop_tol, and reports divergence once |x| exceeds kDivergenceBound.
inline LearnerRun run_learner(double x0, double u0, const PotentialSpec& potential, DisruptorSource& dis,
                              const PhysicsParams& params, const LearnerOptions& opts = {}) {
  return detail::iterate_learner(x0, u0, potential, opts, [&](const LearnerState& s) {
    return quantum_learn_step(s, potential, dis, params, opts.time_scale);
  });
}

/// Classical counterpart of run_learner driven by momentum_gd_step.
inline LearnerRun run_momentum_gd(double x0, double u0, const PotentialSpec& objective, double alpha, double beta,
                                  const LearnerOptions& opts = {}) {
  return detail::iterate_learner(x0, u0, objective, opts, [&](const LearnerState& s) {
    return momentum_gd_step(s, objective, alpha, beta);
  });
}

}  // namespace qlearn
