#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qlearn/error.hpp"

namespace qlearn {

/// Uniform 1-D discretization of position space.
///
/// A periodic grid places n points on [x_min, x_max) so that x_max is the
/// image of x_min; a non-periodic grid includes both end points.
class SpatialGrid {
 public:
  SpatialGrid(double x_min, double x_max, std::size_t n, bool periodic)
      : x_min_(x_min), x_max_(x_max), n_(n), periodic_(periodic) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
      throw DomainError("grid bounds must be finite");
    }
    if (!(x_max > x_min)) {
      throw DomainError("grid requires x_max > x_min");
    }
    if (n < 8) {
      throw DomainError("grid requires at least 8 points, got " + std::to_string(n));
    }
    dx_ = periodic ? (x_max - x_min) / static_cast<double>(n)
                   : (x_max - x_min) / static_cast<double>(n - 1);
  }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  bool periodic() const noexcept { return periodic_; }
  double dx() const noexcept { return dx_; }
  double length() const noexcept { return x_max_ - x_min_; }

  double x(std::size_t j) const noexcept { return x_min_ + static_cast<double>(j) * dx_; }

  std::vector<double> points() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
  }

  bool contains(double x) const noexcept { return x >= x_min_ && x <= x_max_; }

  bool power_of_two() const noexcept { return (n_ & (n_ - 1)) == 0; }

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_;
  bool periodic_;
  double dx_ = 0.0;
};

inline SpatialGrid build_grid(double x_min, double x_max, std::int64_t n, bool periodic) {
  if (n < 8) throw DomainError("grid requires at least 8 points, got " + std::to_string(n));
  return SpatialGrid(x_min, x_max, static_cast<std::size_t>(n), periodic);
}

}  // namespace qlearn
