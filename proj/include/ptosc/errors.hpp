#pragma once

#include <stdexcept>

namespace ptosc {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Jet division with a denominator value below the zero floor.
struct DivisionByZeroJet : Error {
  using Error::Error;
};

/// Result would leave the double-precision exponent range.
struct OverflowError : Error {
  using Error::Error;
};

/// Index above a documented accuracy/termination cap (e.g. Hermite n > 64).
struct IndexTooLarge : Error {
  using Error::Error;
};

/// Evaluation at (or numerically on top of) a pole such as x = i/2eps.
struct PoleError : Error {
  using Error::Error;
};

/// Series argument outside its convergence disc.
struct ConvergenceDomainError : Error {
  using Error::Error;
};

/// A norm that must be real came out with a non-negligible imaginary part.
struct NonRealNorm : Error {
  using Error::Error;
};

/// Iterative eigenvalue sweep failed to settle within its iteration budget.
struct NoConvergence : Error {
  using Error::Error;
};

}  // namespace ptosc
