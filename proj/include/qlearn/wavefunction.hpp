#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"

namespace qlearn {

using Complex = std::complex<double>;

/// Complex amplitudes of a single particle sampled on a SpatialGrid.
class Wavefunction {
 public:
  Wavefunction(SpatialGrid grid, std::vector<Complex> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw DomainError("wavefunction length does not match grid size");
  }

  explicit Wavefunction(SpatialGrid grid) : grid_(grid), values_(grid.size()) {}

  const SpatialGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  Complex operator[](std::size_t j) const noexcept { return values_[j]; }
  Complex& operator[](std::size_t j) noexcept { return values_[j]; }

 private:
  SpatialGrid grid_;
  std::vector<Complex> values_;
};

/// Discrete probability mass sum_j |psi_j|^2 dx.
inline double norm(const Wavefunction& psi) {
  double acc = 0.0;
  for (const auto& c : psi.values()) acc += std::norm(c);
  return acc * psi.grid().dx();
}

inline std::vector<double> density(const Wavefunction& psi) {
  std::vector<double> rho(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi[j]);
  return rho;
}

inline std::vector<double> amplitude(const Wavefunction& psi) {
  std::vector<double> r(psi.size());
  for (std::size_t j = 0; j < psi.size(); ++j) r[j] = std::sqrt(std::norm(psi[j]));
  return r;
}

inline Wavefunction normalized(Wavefunction psi) {
  const double nrm = norm(psi);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalError("cannot normalize a zero or non-finite wavefunction");
  const double scale = 1.0 / std::sqrt(nrm);
  for (auto& c : psi.values()) c *= scale;
  return psi;
}

/// <x> = sum_j x_j |psi_j|^2 dx.
inline double expectation_position(const Wavefunction& psi) {
  const auto& g = psi.grid();
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) acc += g.x(j) * std::norm(psi[j]);
  return acc * g.dx();
}

/// Density variance about <x>.
inline double position_variance(const Wavefunction& psi) {
  const auto& g = psi.grid();
  const double mean = expectation_position(psi);
  double acc = 0.0;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double d = g.x(j) - mean;
    acc += d * d * std::norm(psi[j]);
  }
  return acc * g.dx();
}

/// Normalized Gaussian packet with density standard deviation `sigma`,
/// centered at x0 and carrying momentum p0 (phase p0 (x - x0) / hbar).
inline Wavefunction gaussian_packet(const SpatialGrid& grid, double x0, double sigma, double p0 = 0.0,
                                    double hbar = 1.0) {
  if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be > 0");
  Wavefunction psi(grid);
  const double k = hbar > 0.0 ? p0 / hbar : 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double d = grid.x(j) - x0;
    psi[j] = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)), k * d);
  }
  return normalized(std::move(psi));
}

}  // namespace qlearn
