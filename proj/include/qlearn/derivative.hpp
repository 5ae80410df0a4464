#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qlearn/error.hpp"
#include "qlearn/fft.hpp"
#include "qlearn/grid.hpp"

namespace qlearn {

/// Differentiation scheme for fields sampled on a SpatialGrid.
///
/// central: second-order central differences, wrapping on periodic grids and
/// switching to second-order one-sided stencils at non-periodic ends.
/// spectral: Fourier differentiation, periodic grids only.
enum class DerivativeScheme { central, spectral };

inline std::string_view to_string(DerivativeScheme s) {
  return s == DerivativeScheme::central ? "central" : "spectral";
}

namespace detail {

inline void check_length(std::span<const double> f, const SpatialGrid& grid) {
  if (f.size() != grid.size()) throw DomainError("field length does not match grid size");
}

inline void require_periodic(const SpatialGrid& grid) {
  if (!grid.periodic()) throw DomainError("spectral derivatives require a periodic grid");
}

// Multiplies the spectrum of f by `symbol(k)` and returns the real part.
template <class Symbol>
std::vector<double> spectral_apply(std::span<const double> f, const SpatialGrid& grid, Symbol symbol) {
  const std::size_t n = grid.size();
  std::vector<std::complex<double>> work(f.begin(), f.end());
  Fft fft(n);
  fft.forward(work);
  const auto k = wavenumbers(n, grid.dx());
  for (std::size_t j = 0; j < n; ++j) work[j] *= symbol(k[j], j);
  fft.inverse(work);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = work[j].real();
  return out;
}

}  // namespace detail

inline std::vector<double> gradient(std::span<const double> f, const SpatialGrid& grid,
                                    DerivativeScheme scheme = DerivativeScheme::central) {
  detail::check_length(f, grid);
  const std::size_t n = grid.size();
  if (scheme == DerivativeScheme::spectral) {
    detail::require_periodic(grid);
    return detail::spectral_apply(f, grid, [n](double k, std::size_t j) {
      // The Nyquist mode has no odd partner; drop it for a real derivative.
      if (n % 2 == 0 && j == n / 2) return std::complex<double>(0.0, 0.0);
      return std::complex<double>(0.0, k);
    });
  }
  const double inv2h = 1.0 / (2.0 * grid.dx());
  std::vector<double> out(n);
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (f[j + 1] - f[j - 1]) * inv2h;
  if (grid.periodic()) {
    out[0] = (f[1] - f[n - 1]) * inv2h;
    out[n - 1] = (f[0] - f[n - 2]) * inv2h;
  } else {
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2h;
  }
  return out;
}

/// Second derivative with the positive sign convention d^2/dx^2.
inline std::vector<double> laplacian(std::span<const double> f, const SpatialGrid& grid,
                                     DerivativeScheme scheme = DerivativeScheme::central) {
  detail::check_length(f, grid);
  const std::size_t n = grid.size();
  if (scheme == DerivativeScheme::spectral) {
    detail::require_periodic(grid);
    return detail::spectral_apply(f, grid, [](double k, std::size_t) { return std::complex<double>(-k * k, 0.0); });
  }
  const double inv_h2 = 1.0 / (grid.dx() * grid.dx());
  std::vector<double> out(n);
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) * inv_h2;
  if (grid.periodic()) {
    out[0] = (f[1] - 2.0 * f[0] + f[n - 1]) * inv_h2;
    out[n - 1] = (f[0] - 2.0 * f[n - 1] + f[n - 2]) * inv_h2;
  } else {
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv_h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv_h2;
  }
  return out;
}

}  // namespace qlearn
