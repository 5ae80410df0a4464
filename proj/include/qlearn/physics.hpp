#pragma once

#include <cmath>
#include <string>

#include "qlearn/error.hpp"

namespace qlearn {

/// Density floor below which a grid point is treated as a node of psi.
inline constexpr double kNodeFloor = 1e-12;

/// Mass, Planck constant and friction of the dissipative particle.
///
/// The momentum factor beta = 1 - mu and the learning rate lambda = 1/m are
/// always recomputed from m and mu.
class PhysicsParams {
 public:
  PhysicsParams(double m = 1.0, double hbar = 1.0, double mu = 1.0) : m_(m), hbar_(hbar), mu_(mu) {
    if (!std::isfinite(m) || !(m > 0.0)) throw DomainError("physics.m must be finite and > 0");
    if (!std::isfinite(hbar) || hbar < 0.0) throw DomainError("physics.hbar must be finite and >= 0");
    if (!std::isfinite(mu) || mu < 0.0 || mu > 1.0) {
      throw DomainError("physics.mu must lie in [0, 1]");
    }
  }

  double m() const noexcept { return m_; }
  double hbar() const noexcept { return hbar_; }
  double mu() const noexcept { return mu_; }
  double beta() const noexcept { return 1.0 - mu_; }
  double lambda() const noexcept { return 1.0 / m_; }

  PhysicsParams with_hbar(double hbar) const { return {m_, hbar, mu_}; }
  PhysicsParams with_mass(double m) const { return {m, hbar_, mu_}; }
  PhysicsParams with_friction(double mu) const { return {m_, hbar_, mu}; }

  friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;

 private:
  double m_;
  double hbar_;
  double mu_;
};

}  // namespace qlearn
