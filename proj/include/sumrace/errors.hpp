#ifndef SUMRACE_ERRORS_HPP
#define SUMRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sumrace {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A set constructor received no elements.
struct EmptySetError : Error {
  using Error::Error;
};

/// Element arithmetic left the 64-bit range.
struct OverflowError : Error {
  using Error::Error;
};

/// A computation would exceed the configured dense-bit or sparse-element budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

/// An operation was called outside its stated precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// A size predictor was asked to extrapolate outside its proven hypothesis.
struct ValidityError : Error {
  using Error::Error;
};

/// The structure scan hit its cap without finding a stable decomposition.
struct StabilizationNotFoundError : Error {
  using Error::Error;
};

/// An internal search failed where theory guarantees a witness; indicates a bug.
struct SearchExhaustedError : Error {
  using Error::Error;
};

/// The exhaustive base-pair search space was empty.
struct NoBasePairError : Error {
  using Error::Error;
};

/// A race state violates its invariants (e.g. unequal diameters in equal-diameter mode).
struct InvalidStateError : Error {
  using Error::Error;
};

/// Malformed input text or certificate JSON.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace sumrace

#endif  // SUMRACE_ERRORS_HPP
