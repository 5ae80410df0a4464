#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qlearn/error.hpp"
#include "qlearn/grid.hpp"

namespace qlearn {

enum class PotentialKind { harmonic, quartic, polynomial, tabulated };

inline std::string_view to_string(PotentialKind k) {
  switch (k) {
    case PotentialKind::harmonic: return "harmonic";
    case PotentialKind::quartic: return "quartic";
    case PotentialKind::polynomial: return "polynomial";
    case PotentialKind::tabulated: return "tabulated";
  }
  return "unknown";
}

/// External potential V(x), the objective of the learner.
///
///   harmonic    V = omega^2 x^2 / 2           parameters {omega}
///   quartic     V = k x^4                     parameters {k}
///   polynomial  V = sum_i c_i x^i             parameters {c_0, c_1, ...}
///   tabulated   piecewise-linear through (x_i, V_i); the gradient is a
///               central difference with step h_v.
class PotentialSpec {
 public:
  static PotentialSpec harmonic(double omega) {
    if (!std::isfinite(omega) || !(omega > 0.0)) throw DomainError("potential.omega must be finite and > 0");
    return PotentialSpec(PotentialKind::harmonic, {omega});
  }

  static PotentialSpec quartic(double k) {
    if (!std::isfinite(k)) throw DomainError("potential.k must be finite");
    return PotentialSpec(PotentialKind::quartic, {k});
  }

  static PotentialSpec polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) throw DomainError("potential.coefficients must not be empty");
    for (double c : coefficients) {
      if (!std::isfinite(c)) throw DomainError("potential.coefficients must be finite");
    }
    return PotentialSpec(PotentialKind::polynomial, std::move(coefficients));
  }

  static PotentialSpec tabulated(std::vector<double> xs, std::vector<double> vs, double h_v = 1e-5) {
    if (xs.size() < 2 || xs.size() != vs.size()) {
      throw DomainError("potential.table needs at least two (x, V) rows");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(vs[i])) throw DomainError("potential.table must be finite");
      if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError("potential.table x must be strictly increasing");
    }
    if (!(h_v > 0.0)) throw DomainError("potential.h_v must be > 0");
    PotentialSpec spec(PotentialKind::tabulated, {});
    spec.table_x_ = std::move(xs);
    spec.table_v_ = std::move(vs);
    spec.h_v_ = h_v;
    return spec;
  }

  PotentialKind kind() const noexcept { return kind_; }
  const std::vector<double>& parameters() const noexcept { return params_; }
  const std::vector<double>& table_x() const noexcept { return table_x_; }
  const std::vector<double>& table_v() const noexcept { return table_v_; }
  double h_v() const noexcept { return h_v_; }

  /// True when the gradient is computed in closed form.
  bool analytic_gradient() const noexcept { return kind_ != PotentialKind::tabulated; }

  double value(double x) const {
    switch (kind_) {
      case PotentialKind::harmonic: {
        const double w = params_[0];
        return 0.5 * w * w * x * x;
      }
      case PotentialKind::quartic: return params_[0] * x * x * x * x;
      case PotentialKind::polynomial: {
        double acc = 0.0;
        for (auto it = params_.rbegin(); it != params_.rend(); ++it) acc = acc * x + *it;
        return acc;
      }
      case PotentialKind::tabulated: return interpolate(x);
    }
    return 0.0;
  }

  double gradient(double x) const {
    switch (kind_) {
      case PotentialKind::harmonic: {
        const double w = params_[0];
        return w * w * x;
      }
      case PotentialKind::quartic: return 4.0 * params_[0] * x * x * x;
      case PotentialKind::polynomial: {
        double acc = 0.0;
        for (std::size_t i = params_.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * params_[i];
        return acc;
      }
      case PotentialKind::tabulated: return (interpolate(x + h_v_) - interpolate(x - h_v_)) / (2.0 * h_v_);
    }
    return 0.0;
  }

  std::vector<double> sample(const SpatialGrid& grid) const {
    std::vector<double> v(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) v[j] = value(grid.x(j));
    return v;
  }

 private:
  PotentialSpec(PotentialKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {}

  double interpolate(double x) const {
    if (!(x >= table_x_.front() && x <= table_x_.back())) {
      throw DomainError("x = " + std::to_string(x) + " lies outside the tabulated potential");
    }
    auto it = std::upper_bound(table_x_.begin(), table_x_.end(), x);
    if (it == table_x_.end()) return table_v_.back();
    const auto i = static_cast<std::size_t>(it - table_x_.begin()) - 1;
    const double t = (x - table_x_[i]) / (table_x_[i + 1] - table_x_[i]);
    return table_v_[i] + t * (table_v_[i + 1] - table_v_[i]);
  }

  PotentialKind kind_;
  std::vector<double> params_;
  std::vector<double> table_x_;
  std::vector<double> table_v_;
  double h_v_ = 1e-5;
};

}  // namespace qlearn
