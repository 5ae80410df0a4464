#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlearn {

/// Precondition violated by an argument (bad grid bounds, out-of-domain
/// evaluation point, invalid physical parameter).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a meaningful result.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, std::int64_t step = -1)
      : std::runtime_error(step >= 0 ? what + " (step " + std::to_string(step) + ")" : what),
        step_(step) {}

  /// Index of the failing step, or -1 when not tied to a step.
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Phase extraction refused: too many points below the density floor.
class NodeDominatedError : public NumericalError {
 public:
  NodeDominatedError(const std::string& what, std::size_t below_floor, std::size_t considered)
      : NumericalError(what), below_floor_(below_floor), considered_(considered) {}

  std::size_t below_floor() const noexcept { return below_floor_; }
  std::size_t considered() const noexcept { return considered_; }

 private:
  std::size_t below_floor_;
  std::size_t considered_;
};

}  // namespace qlearn
