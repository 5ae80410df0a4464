#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "qlearn/derivative.hpp"
#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"
#include "qlearn/physics.hpp"
#include "qlearn/wavefunction.hpp"

namespace qlearn {

/// Hydrodynamic (polar) representation of a wavefunction, psi = R exp(iS/hbar).
///
/// S carries units of action. It is unwrapped left to right and shifted so
/// that S vanishes at the density maximum.
struct MadelungFields {
  SpatialGrid grid;
  std::vector<double> R;
  std::vector<double> S;
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> p;
  /// Number of points whose phase was inherited from a neighbour (rho below
  /// the node floor).
  std::size_t regularized = 0;
};

/// Result of phase extraction without the velocity fields.
struct PhaseField {
  std::vector<double> S;
  std::vector<double> rho;
  std::vector<bool> valid;
  std::size_t regularized = 0;
};

namespace detail {

inline double wrap_to_pi(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::remainder(a, two_pi);
  // remainder() returns values in [-pi, pi]; map -pi onto +pi.
  return a <= -std::numbers::pi ? a + two_pi : a;
}

}  // namespace detail

/// Extracts the unwrapped phase S = hbar * arg(psi).
///
/// Points with rho < kNodeFloor take the phase of the nearest valid point
/// (the left one on ties). Only the span between the first and the last valid
/// point is inspected for nodes; the vanishing tails of a localized packet are
/// not nodes. More than half of that span below the floor, or no valid point
/// at all, raises NodeDominatedError.
inline PhaseField extract_phase(const Wavefunction& psi, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("phase extraction requires hbar > 0");
  const std::size_t n = psi.size();
  PhaseField out;
  out.rho.resize(n);
  out.valid.resize(n);
  out.S.assign(n, 0.0);

  std::size_t first = n;
  std::size_t last = 0;
  std::size_t argmax = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = std::sqrt(std::norm(psi[j]));
    out.rho[j] = r * r;
    out.valid[j] = out.rho[j] >= kNodeFloor;
    if (out.valid[j]) {
      first = std::min(first, j);
      last = j;
    }
    if (out.rho[j] > out.rho[argmax]) argmax = j;
  }
  if (first == n) throw NodeDominatedError("no grid point above the density floor", n, n);

  const std::size_t span = last - first + 1;
  std::size_t interior_nodes = 0;
  for (std::size_t j = first; j <= last; ++j) interior_nodes += out.valid[j] ? 0 : 1;
  if (2 * interior_nodes > span) {
    throw NodeDominatedError("node-dominated wavefunction: " + std::to_string(interior_nodes) + " of " +
                                 std::to_string(span) + " points in the support are below the density floor",
                             interior_nodes, span);
  }

  // Unwrap along consecutive valid points.
  std::vector<double> theta(n, 0.0);
  double prev_raw = std::arg(psi[first]);
  std::size_t prev = first;
  theta[first] = prev_raw;
  for (std::size_t j = first + 1; j <= last; ++j) {
    if (!out.valid[j]) continue;
    const double raw = std::arg(psi[j]);
    theta[j] = theta[prev] + detail::wrap_to_pi(raw - prev_raw);
    prev_raw = raw;
    prev = j;
  }

  // Fill nodes and tails from the nearest valid neighbour.
  std::size_t regularized = 0;
  {
    std::vector<std::size_t> left(n, n);
    std::vector<std::size_t> right(n, n);
    std::size_t seen = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (out.valid[j]) seen = j;
      left[j] = seen;
    }
    seen = n;
    for (std::size_t j = n; j-- > 0;) {
      if (out.valid[j]) seen = j;
      right[j] = seen;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (out.valid[j]) continue;
      ++regularized;
      const std::size_t l = left[j];
      const std::size_t r = right[j];
      std::size_t src;
      if (l == n) {
        src = r;
      } else if (r == n) {
        src = l;
      } else {
        src = (j - l) <= (r - j) ? l : r;
      }
      theta[j] = theta[src];
    }
  }

  const double ref = theta[argmax];
  for (std::size_t j = 0; j < n; ++j) out.S[j] = hbar * (theta[j] - ref);
  out.regularized = regularized;
  return out;
}

namespace detail {

// Central-difference gradient of an action field. Neighbour differences across
// the periodic seam are reduced modulo 2*pi*hbar so that an unwrapped ramp
// differentiates cleanly.
inline std::vector<double> phase_gradient_central(const std::vector<double>& S, const SpatialGrid& grid,
                                                  double hbar) {
  const std::size_t n = S.size();
  const double period = 2.0 * std::numbers::pi * hbar;
  auto seam = [&](double d) { return d - period * std::round(d / period); };
  const double inv2h = 1.0 / (2.0 * grid.dx());
  std::vector<double> g(n);
  for (std::size_t j = 1; j + 1 < n; ++j) g[j] = (S[j + 1] - S[j - 1]) * inv2h;
  if (grid.periodic()) {
    g[0] = ((S[1] - S[0]) + seam(S[0] - S[n - 1])) * inv2h;
    g[n - 1] = (seam(S[0] - S[n - 1]) + (S[n - 1] - S[n - 2])) * inv2h;
  } else {
    g[0] = (-3.0 * S[0] + 4.0 * S[1] - S[2]) * inv2h;
    g[n - 1] = (3.0 * S[n - 1] - 4.0 * S[n - 2] + S[n - 3]) * inv2h;
  }
  return g;
}

// hbar * Im(conj(psi) psi') / rho with a spectral psi'.
inline std::vector<double> phase_gradient_spectral(const Wavefunction& psi, const PhaseField& phase, double hbar) {
  const auto& grid = psi.grid();
  require_periodic(grid);
  const std::size_t n = grid.size();
  std::vector<Complex> d(psi.values().begin(), psi.values().end());
  Fft fft(n);
  fft.forward(d);
  const auto k = wavenumbers(n, grid.dx());
  for (std::size_t j = 0; j < n; ++j) {
    d[j] *= (n % 2 == 0 && j == n / 2) ? Complex(0.0, 0.0) : Complex(0.0, k[j]);
  }
  fft.inverse(d);
  std::vector<double> g(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (phase.valid[j]) g[j] = hbar * std::imag(std::conj(psi[j]) * d[j]) / phase.rho[j];
  }
  // Nodes take the gradient of the nearest valid neighbour, as the phase does.
  std::size_t last_valid = n;
  std::vector<std::size_t> left(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (phase.valid[j]) last_valid = j;
    left[j] = last_valid;
  }
  std::size_t next_valid = n;
  for (std::size_t j = n; j-- > 0;) {
    if (phase.valid[j]) {
      next_valid = j;
      continue;
    }
    const std::size_t l = left[j];
    const std::size_t r = next_valid;
    if (l == n) {
      g[j] = g[r];
    } else if (r == n) {
      g[j] = g[l];
    } else {
      g[j] = (j - l) <= (r - j) ? g[l] : g[r];
    }
  }
  return g;
}

}  // namespace detail

/// Polar decomposition psi = R exp(iS/hbar) with u = dS/dx / m and p = m u.
inline MadelungFields polar_decompose(const Wavefunction& psi, const PhysicsParams& params,
                                      DerivativeScheme scheme = DerivativeScheme::central) {
  PhaseField phase = extract_phase(psi, params.hbar());
  const std::size_t n = psi.size();
  MadelungFields f{psi.grid(), std::vector<double>(n), std::move(phase.S), std::vector<double>(n), {}, {}, 0};
  for (std::size_t j = 0; j < n; ++j) {
    f.R[j] = std::sqrt(std::norm(psi[j]));
    f.rho[j] = f.R[j] * f.R[j];
  }
  f.regularized = phase.regularized;

  std::vector<double> grad;
  if (scheme == DerivativeScheme::spectral) {
    grad = detail::phase_gradient_spectral(psi, phase, params.hbar());
  } else {
    grad = detail::phase_gradient_central(f.S, psi.grid(), params.hbar());
  }
  f.u.resize(n);
  f.p.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    f.u[j] = grad[j] / params.m();
    f.p[j] = params.m() * f.u[j];
  }
  return f;
}

/// R exp(iS/hbar) on the grid of `fields`.
inline Wavefunction recompose(const MadelungFields& fields, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("recomposition requires hbar > 0");
  Wavefunction psi(fields.grid);
  for (std::size_t j = 0; j < psi.size(); ++j) psi[j] = std::polar(fields.R[j], fields.S[j] / hbar);
  return psi;
}

/// <p> in hydrodynamic form, sum_j p_j rho_j dx.
inline double expectation_momentum(const Wavefunction& psi, const PhysicsParams& params,
                                   DerivativeScheme scheme = DerivativeScheme::central) {
  const auto f = polar_decompose(psi, params, scheme);
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) acc += f.p[j] * f.rho[j];
  return acc * psi.grid().dx();
}

/// Density-weighted mean action <S> = sum_j S_j rho_j dx.
inline double expectation_phase(const MadelungFields& fields) {
  double acc = 0.0;
  for (std::size_t j = 0; j < fields.S.size(); ++j) acc += fields.S[j] * fields.rho[j];
  return acc * fields.grid.dx();
}

}  // namespace qlearn
