#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qlearn/derivative.hpp"
#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/wavefunction.hpp"

namespace qlearn {

enum class FieldMeaning { quantum_potential, disruptor, potential, generic };

/// Real field sampled on a grid, tagged with what it represents.
struct ScalarField {
  SpatialGrid grid;
  std::vector<double> values;
  FieldMeaning meaning = FieldMeaning::generic;
  /// Points where the amplitude was clamped to the node floor.
  std::size_t regularized = 0;

  ScalarField(SpatialGrid g, std::vector<double> v, FieldMeaning m = FieldMeaning::generic, std::size_t reg = 0)
      : grid(g), values(std::move(v)), meaning(m), regularized(reg) {
    if (values.size() != grid.size()) throw DomainError("field length does not match grid size");
  }
};

inline ScalarField amplitude_field(const Wavefunction& psi) {
  return ScalarField(psi.grid(), amplitude(psi));
}

namespace detail {

// Regularized curvature ratio (d^2 R/dx^2) / max(R, floor).
inline std::vector<double> curvature_ratio(const ScalarField& R, DerivativeScheme scheme, std::size_t& clamped) {
  for (double r : R.values) {
    if (!(r >= 0.0)) throw DomainError("amplitude field must be non-negative");
  }
  auto lap = laplacian(R.values, R.grid, scheme);
  clamped = 0;
  for (std::size_t j = 0; j < lap.size(); ++j) {
    double denom = R.values[j];
    if (denom < kNodeFloor) {
      denom = kNodeFloor;
      ++clamped;
    }
    lap[j] /= denom;
  }
  return lap;
}

}  // namespace detail

/// Quantum potential Q = -(hbar^2 / 2m) (d^2 R/dx^2) / R.
///
/// The denominator is clamped at kNodeFloor; the number of clamped points is
/// reported in the result.
inline ScalarField quantum_potential(const ScalarField& R, const PhysicsParams& params,
                                     DerivativeScheme scheme = DerivativeScheme::central) {
  const double hbar = params.hbar();
  if (hbar == 0.0) return {R.grid, std::vector<double>(R.values.size(), 0.0), FieldMeaning::quantum_potential};
  std::size_t clamped = 0;
  auto w = detail::curvature_ratio(R, scheme, clamped);
  const double prefactor = -(hbar * hbar) / (2.0 * params.m());
  for (auto& v : w) v *= prefactor;
  return {R.grid, std::move(w), FieldMeaning::quantum_potential, clamped};
}

/// Quantum disruptor Dis = (hbar^2 / 2m^2) d/dx[(d^2 R/dx^2) / R], which is
/// -(1/m) dQ/dx.
inline ScalarField disruptor_field(const ScalarField& R, const PhysicsParams& params,
                                   DerivativeScheme scheme = DerivativeScheme::central) {
  const double hbar = params.hbar();
  if (hbar == 0.0) return {R.grid, std::vector<double>(R.values.size(), 0.0), FieldMeaning::disruptor};
  std::size_t clamped = 0;
  const auto w = detail::curvature_ratio(R, scheme, clamped);
  auto dis = gradient(w, R.grid, scheme);
  const double prefactor = (hbar * hbar) / (2.0 * params.m() * params.m());
  for (auto& v : dis) v *= prefactor;
  return {R.grid, std::move(dis), FieldMeaning::disruptor, clamped};
}

/// Linear interpolation of `field` at x. On a periodic grid the interval
/// [x_{n-1}, x_max] wraps onto x_0.
inline double disruptor_at(const ScalarField& field, double x) {
  const auto& g = field.grid;
  if (!std::isfinite(x) || !g.contains(x)) {
    throw DomainError("evaluation point " + std::to_string(x) + " lies outside the grid domain");
  }
  const std::size_t n = g.size();
  const double s = (x - g.x_min()) / g.dx();
  auto j = static_cast<std::size_t>(std::floor(s));
  if (!g.periodic() && j >= n - 1) return field.values[n - 1];
  if (j >= n) j = n - 1;
  const double frac = s - static_cast<double>(j);
  const std::size_t k = (j + 1 == n) ? 0 : j + 1;
  if (frac == 0.0) return field.values[j];
  return field.values[j] + frac * (field.values[k] - field.values[j]);
}

}  // namespace qlearn
