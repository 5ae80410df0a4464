#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlearn/error.hpp"
#include "qlearn/fft.hpp"
#include "qlearn/grid.hpp"
#include "qlearn/madelung.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/potential.hpp"
#include "qlearn/wavefunction.hpp"

namespace qlearn {

enum class PropagationScheme { split_step_spectral, crank_nicolson };

inline std::string_view to_string(PropagationScheme s) {
  return s == PropagationScheme::split_step_spectral ? "split_step_spectral" : "crank_nicolson";
}

struct PropagatorConfig {
  double dt = 1e-2;
  PropagationScheme scheme = PropagationScheme::split_step_spectral;
  double t_final = 20.0;
  std::int64_t snapshot_every = 100;

  void validate(const SpatialGrid& grid) const {
    if (!std::isfinite(dt) || !(dt > 0.0)) throw DomainError("run.dt must be finite and > 0");
    if (!std::isfinite(t_final) || t_final < 0.0) throw DomainError("run.t_final must be finite and >= 0");
    if (snapshot_every < 1) throw DomainError("run.snapshot_every must be >= 1");
    if (scheme == PropagationScheme::split_step_spectral && (!grid.periodic() || !grid.power_of_two())) {
      throw DomainError("split_step_spectral requires a periodic grid with a power-of-two point count");
    }
    if (scheme == PropagationScheme::crank_nicolson && grid.periodic()) {
      throw DomainError("crank_nicolson requires a non-periodic grid");
    }
  }

  /// Number of steps so that the final time is at least t_final - dt.
  std::int64_t step_count() const {
    if (t_final == 0.0) return 0;
    return static_cast<std::int64_t>(std::ceil(t_final / dt - 1e-9));
  }
};

/// Centre, momentum and accumulated phase of a fixed-width Gaussian packet
/// in the harmonic trap V = omega^2 x^2 / 2 (m = hbar = 1 units).
struct CoherentStateParams {
  double x_t = 0.0;
  double p_t = 0.0;
  double s_t = 0.0;
  double omega = 1.0;
};

/// psi(x) = (omega/pi)^{1/4} exp(-(omega/2)(x - x_t)^2 + i p_t (x - x_t) + i s_t),
/// renormalized on the grid. The grid must cover x_t +- 4 density standard
/// deviations.
inline Wavefunction coherent_state(const CoherentStateParams& cp, const SpatialGrid& grid) {
  if (!std::isfinite(cp.omega) || !(cp.omega > 0.0)) throw DomainError("coherent state omega must be > 0");
  const double sigma = 1.0 / std::sqrt(2.0 * cp.omega);
  if (cp.x_t - 4.0 * sigma < grid.x_min() || cp.x_t + 4.0 * sigma > grid.x_max()) {
    throw DomainError("grid too narrow for the coherent state: need [x_t - 4 sigma, x_t + 4 sigma] inside the domain");
  }
  const double amp = std::pow(cp.omega / std::numbers::pi, 0.25);
  Wavefunction psi(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = grid.x(j) - cp.x_t;
    psi[j] = amp * std::exp(Complex(-0.5 * cp.omega * d * d, cp.p_t * d + cp.s_t));
  }
  return normalized(std::move(psi));
}

/// Exact solution of x' = p, p' = -omega^2 x - mu p.
struct OscillatorState {
  double x;
  double p;
};

inline OscillatorState damped_oscillator_closed_form(double x0, double p0, double mu, double omega, double t) {
  if (t < 0.0) throw DomainError("closed form requires t >= 0");
  if (t == 0.0) return {x0, p0};
  const double disc = mu * mu - 4.0 * omega * omega;
  const double decay = std::exp(-0.5 * mu * t);
  const double b = p0 + 0.5 * mu * x0;
  if (disc < 0.0) {
    const double wd = 0.5 * std::sqrt(-disc);
    const double c = std::cos(wd * t);
    const double s = std::sin(wd * t);
    const double x = decay * (x0 * c + (b / wd) * s);
    const double p = decay * (p0 * c - ((omega * omega * x0 + 0.5 * mu * p0) / wd) * s);
    return {x, p};
  }
  if (disc == 0.0) {
    const double x = decay * (x0 + b * t);
    const double p = decay * (p0 - 0.5 * mu * b * t);
    return {x, p};
  }
  const double root = std::sqrt(disc);
  const double r1 = 0.5 * (-mu + root);
  const double r2 = 0.5 * (-mu - root);
  const double a = (p0 - r2 * x0) / (r1 - r2);
  const double c = x0 - a;
  const double e1 = std::exp(r1 * t);
  const double e2 = std::exp(r2 * t);
  return {a * e1 + c * e2, a * r1 * e1 + c * r2 * e2};
}

/// One classical RK4 step of the coherent-state centre equations
///   dx/dt = p/m, dp/dt = -omega^2 x - mu p, ds/dt = p^2/(2m) - omega^2 x^2/2 - omega/2.
inline CoherentStateParams coherent_ode_step(const CoherentStateParams& cp, const PhysicsParams& params, double dt) {
  if (!(dt > 0.0)) throw DomainError("coherent_ode_step requires dt > 0");
  const double m = params.m();
  const double mu = params.mu();
  const double w2 = cp.omega * cp.omega;
  struct D {
    double x, p, s;
  };
  auto rhs = [&](double x, double p) {
    return D{p / m, -w2 * x - mu * p, 0.5 * p * p / m - 0.5 * w2 * x * x - 0.5 * cp.omega};
  };
  const D k1 = rhs(cp.x_t, cp.p_t);
  const D k2 = rhs(cp.x_t + 0.5 * dt * k1.x, cp.p_t + 0.5 * dt * k1.p);
  const D k3 = rhs(cp.x_t + 0.5 * dt * k2.x, cp.p_t + 0.5 * dt * k2.p);
  const D k4 = rhs(cp.x_t + dt * k3.x, cp.p_t + dt * k3.p);
  CoherentStateParams out = cp;
  out.x_t += dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  out.p_t += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
  out.s_t += dt / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s);
  return out;
}

/// Propagator for the dissipative (Kostin-type) Schrodinger equation
///   i hbar psi_t = -(hbar^2/2m) psi_xx + V psi + mu (S - <S>) psi.
///
/// split_step_spectral: Strang splitting, half kinetic step in Fourier space,
/// full position-space step, half kinetic step. On the position-space
/// substep rho is frozen and S obeys the linear ODE
///   dS/dt = -V - mu (S - <S>),
/// which is integrated exactly from the S extracted at the step midpoint.
///
/// crank_nicolson: half position-space friction substep, Crank-Nicolson step
/// of the linear Hamiltonian with zero Dirichlet boundaries, half friction
/// substep.
class KostinPropagator {
 public:
  KostinPropagator(const SpatialGrid& grid, const PotentialSpec& potential, const PhysicsParams& params, double dt,
                   PropagationScheme scheme = PropagationScheme::split_step_spectral)
      : grid_(grid), params_(params), dt_(dt), scheme_(scheme), v_(potential.sample(grid)) {
    if (!(params.hbar() > 0.0)) throw DomainError("Schrodinger propagation requires hbar > 0");
    PropagatorConfig{dt, scheme, 0.0, 1}.validate(grid);
    const double hbar = params.hbar();
    const double m = params.m();
    if (scheme_ == PropagationScheme::split_step_spectral) {
      fft_ = std::make_unique<Fft>(grid.size());
      const auto k = wavenumbers(grid.size(), grid.dx());
      half_kinetic_.resize(grid.size());
      for (std::size_t j = 0; j < k.size(); ++j) {
        half_kinetic_[j] = std::polar(1.0, -hbar * k[j] * k[j] * dt / (4.0 * m));
      }
      linear_phase_.resize(grid.size());
      for (std::size_t j = 0; j < grid.size(); ++j) linear_phase_[j] = std::polar(1.0, -v_[j] * dt / hbar);
    } else {
      const std::size_t n = grid.size();
      const double kin = hbar * hbar / (2.0 * m * grid.dx() * grid.dx());
      const Complex half_i_dt(0.0, 0.5 * dt / hbar);
      cn_off_ = -half_i_dt * kin;
      cn_diag_.resize(n);
      for (std::size_t j = 0; j < n; ++j) cn_diag_[j] = half_i_dt * (2.0 * kin + v_[j]);
    }
  }

  const SpatialGrid& grid() const noexcept { return grid_; }
  double dt() const noexcept { return dt_; }
  PropagationScheme scheme() const noexcept { return scheme_; }
  const PhysicsParams& params() const noexcept { return params_; }

  /// Advances psi in place by one step of size dt.
  void step(Wavefunction& psi) {
    if (!(psi.grid() == grid_)) throw DomainError("wavefunction grid does not match the propagator grid");
    if (scheme_ == PropagationScheme::split_step_spectral) {
      kinetic_half(psi);
      position_step(psi);
      kinetic_half(psi);
    } else {
      friction_phase(psi, 0.5 * dt_);
      crank_nicolson(psi);
      friction_phase(psi, 0.5 * dt_);
    }
  }

 private:
  void kinetic_half(Wavefunction& psi) {
    auto v = psi.values();
    fft_->forward(v);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= half_kinetic_[j];
    fft_->inverse(v);
  }

  void position_step(Wavefunction& psi) {
    const double mu = params_.mu();
    if (mu == 0.0) {
      for (std::size_t j = 0; j < psi.size(); ++j) psi[j] *= linear_phase_[j];
      return;
    }
    const double hbar = params_.hbar();
    const auto phase = extract_phase(psi, hbar);
    const double dx = grid_.dx();
    double mean_s = 0.0;
    double mean_v = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
      mean_s += phase.S[j] * phase.rho[j];
      mean_v += v_[j] * phase.rho[j];
    }
    mean_s *= dx;
    mean_v *= dx;
    // S(t) - S(0) = -<V> t + (S0 - <S>)(e^{-mu t} - 1) + (V - <V>)(e^{-mu t} - 1)/mu
    const double decay = std::expm1(-mu * dt_);
    const double drive = decay / mu;
    for (std::size_t j = 0; j < psi.size(); ++j) {
      const double delta = -mean_v * dt_ + (phase.S[j] - mean_s) * decay + (v_[j] - mean_v) * drive;
      psi[j] *= std::polar(1.0, delta / hbar);
    }
  }

  void friction_phase(Wavefunction& psi, double tau) {
    const double mu = params_.mu();
    if (mu == 0.0) return;
    const double hbar = params_.hbar();
    const auto phase = extract_phase(psi, hbar);
    double mean_s = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) mean_s += phase.S[j] * phase.rho[j];
    mean_s *= grid_.dx();
    const double decay = std::expm1(-mu * tau);
    for (std::size_t j = 0; j < psi.size(); ++j) {
      psi[j] *= std::polar(1.0, (phase.S[j] - mean_s) * decay / hbar);
    }
  }

  // Solves (1 + i dt H / 2 hbar) psi' = (1 - i dt H / 2 hbar) psi with the
  // Thomas algorithm; H is tridiagonal with psi = 0 outside the grid.
  void crank_nicolson(Wavefunction& psi) {
    const std::size_t n = psi.size();
    const auto in = std::vector<Complex>(psi.values().begin(), psi.values().end());
    std::vector<Complex> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = (1.0 - cn_diag_[j]) * in[j];
      if (j > 0) acc -= cn_off_ * in[j - 1];
      if (j + 1 < n) acc -= cn_off_ * in[j + 1];
      rhs[j] = acc;
    }
    std::vector<Complex> c_prime(n);
    std::vector<Complex> d_prime(n);
    Complex denom = 1.0 + cn_diag_[0];
    c_prime[0] = cn_off_ / denom;
    d_prime[0] = rhs[0] / denom;
    for (std::size_t j = 1; j < n; ++j) {
      denom = (1.0 + cn_diag_[j]) - cn_off_ * c_prime[j - 1];
      c_prime[j] = cn_off_ / denom;
      d_prime[j] = (rhs[j] - cn_off_ * d_prime[j - 1]) / denom;
    }
    psi[n - 1] = d_prime[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) psi[j] = d_prime[j] - c_prime[j] * psi[j + 1];
  }

  SpatialGrid grid_;
  PhysicsParams params_;
  double dt_;
  PropagationScheme scheme_;
  std::vector<double> v_;
  std::unique_ptr<Fft> fft_;
  std::vector<Complex> half_kinetic_;
  std::vector<Complex> linear_phase_;
  Complex cn_off_;
  std::vector<Complex> cn_diag_;
};

/// Single Kostin step; builds a throwaway propagator.
inline Wavefunction kostin_step(Wavefunction psi, const PotentialSpec& potential, const PhysicsParams& params,
                                double dt, PropagationScheme scheme = PropagationScheme::split_step_spectral) {
  KostinPropagator prop(psi.grid(), potential, params, dt, scheme);
  prop.step(psi);
  return psi;
}

struct Snapshot {
  double t;
  Wavefunction psi;
};

/// Snapshots (every snapshot_every steps and always the final state) plus
/// per-step observables. Observables are recorded at every
/// step including t = 0; <p> and <S> are NaN when the phase is undefined.
struct EvolutionRecord {
  std::vector<Snapshot> snapshots;
  std::vector<double> t;
  std::vector<double> mean_x;
  std::vector<double> mean_p;
  std::vector<double> norm;
  std::vector<double> mean_s;
};

using EvolutionObserver = std::function<void(std::int64_t step, double t, const Wavefunction& psi)>;

inline EvolutionRecord evolve(const Wavefunction& psi0, const PotentialSpec& potential, const PhysicsParams& params,
                              const PropagatorConfig& config, const EvolutionObserver& observer = {}) {
  config.validate(psi0.grid());
  KostinPropagator prop(psi0.grid(), potential, params, config.dt, config.scheme);
  EvolutionRecord rec;
  const std::int64_t steps = config.step_count();
  const auto reserve = static_cast<std::size_t>(steps + 1);
  rec.t.reserve(reserve);
  rec.mean_x.reserve(reserve);
  rec.mean_p.reserve(reserve);
  rec.norm.reserve(reserve);
  rec.mean_s.reserve(reserve);

  auto record = [&](std::int64_t k, const Wavefunction& psi) {
    const double t = static_cast<double>(k) * config.dt;
    rec.t.push_back(t);
    rec.mean_x.push_back(expectation_position(psi));
    rec.norm.push_back(norm(psi));
    try {
      const auto f = polar_decompose(psi, params);
      double p = 0.0;
      for (std::size_t j = 0; j < psi.size(); ++j) p += f.p[j] * f.rho[j];
      rec.mean_p.push_back(p * psi.grid().dx());
      rec.mean_s.push_back(expectation_phase(f));
    } catch (const NodeDominatedError&) {
      rec.mean_p.push_back(std::nan(""));
      rec.mean_s.push_back(std::nan(""));
    }
    if (k % config.snapshot_every == 0 || k == steps) rec.snapshots.push_back({t, psi});
    if (observer) observer(k, t, psi);
  };

  Wavefunction psi = psi0;
  record(0, psi);
  for (std::int64_t k = 1; k <= steps; ++k) {
    try {
      prop.step(psi);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string("Kostin step failed: ") + e.what(), k);
    }
    record(k, psi);
  }
  return rec;
}

}  // namespace qlearn
