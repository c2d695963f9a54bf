#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tq {

/// Malformed or out-of-domain input (bad period matrix, bad characteristic tuple, bad JSON).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The period matrix is not in the Siegel upper half-space.
class InvalidPeriodMatrix : public InputError {
 public:
  enum class Reason { kAsymmetric, kNotPositiveDefinite, kNotFinite };

  InvalidPeriodMatrix(Reason reason, const std::string& what) : InputError(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// The lattice sum cannot reach the requested tail bound inside the radius cap.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Some even theta constant (or a quantity derived from it) vanishes numerically,
/// so the Weber pipeline would divide by zero.
class SpecialLocusError : public std::runtime_error {
 public:
  SpecialLocusError(const std::string& what, std::vector<std::string> vanishing = {})
      : std::runtime_error(what), vanishing_(std::move(vanishing)) {}

  /// Reduced characteristics in bracket notation, possibly empty.
  const std::vector<std::string>& vanishing() const noexcept { return vanishing_; }

 private:
  std::vector<std::string> vanishing_;
};

/// A small dense linear system is numerically singular.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degenerate geometric input: zero quartic, line contained in the curve, zero covector.
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tq
