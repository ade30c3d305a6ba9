#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mtphi {

/// Base class for every condition raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A decision (leading digit, zero test, pivot choice) fell below the tracked
/// precision bound and cannot be made without guessing.
struct InsufficientPrecision : Error {
  using Error::Error;
};

/// Valuation requested for an element indistinguishable from zero.
struct ZeroValuation : Error {
  using Error::Error;
};

/// Operation requires a unit (valuation zero) argument.
struct NotAUnit : Error {
  using Error::Error;
};

/// phi is not bijective and diagonalizable with integral p-power eigenvalues.
struct NotMixedTatePhi : Error {
  using Error::Error;
};

/// Matrix expected to be unipotent (or nilpotent) is not.
struct NotUnipotent : Error {
  using Error::Error;
};

/// Input violates a structural precondition: dimensions, slope multiset,
/// extension shape, mismatched fields.
struct WrongShape : Error {
  using Error::Error;
};

/// Scalar-level domain violation: argument outside the convergence disc,
/// unsupported cutoff, non-invertible grading parameter.
struct DomainError : Error {
  using Error::Error;
};

/// Hodge-theoretic input is not a valid real mixed Tate structure.
struct NotMTHS : Error {
  using Error::Error;
};

/// Malformed serialized input; `path` points at the offending location.
struct ParseError : Error {
  std::string path;
  ParseError(std::string where, const std::string& what)
      : Error(what + " (at " + where + ")"), path(std::move(where)) {}
};

}  // namespace mtphi
