#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace nonlocal {

inline constexpr int kMaxDimension = 3;

/// A point in R^n, n <= 3. Coordinates past the active dimension are zero.
using Point = std::array<double, kMaxDimension>;

/// Multi-index for partial derivatives; alpha[i] is the order in x_i.
using MultiIndex = std::array<int, kMaxDimension>;

inline int order(const MultiIndex& alpha) { return alpha[0] + alpha[1] + alpha[2]; }

/// Axis-aligned box [lower, upper] in the first `dimension` coordinates.
struct Box {
  int dimension = 1;
  Point lower{};
  Point upper{};
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A violated precondition on user-supplied parameters.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A non-finite value was produced or consumed during a computation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The kernel was evaluated at its singular point x = 0.
class SingularityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

inline void check_dimension(int n) {
  require(n >= 1 && n <= kMaxDimension, "dimension n must be 1, 2 or 3 (got " + std::to_string(n) + ")");
}

}  // namespace nonlocal
