#pragma once

#include <stdexcept>
#include <string>

namespace qsm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Vectors or rows of mismatched length.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Argument outside the domain of an operation (zero vector, n < 3, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Matrix with the wrong shape or a nonzero diagonal.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Cone that is not pointed; carries the lineality dimension.
class UnsupportedConeError : public Error {
public:
  UnsupportedConeError(const std::string& what, std::size_t lineality)
      : Error(what), lineality_(lineality) {}
  std::size_t lineality() const noexcept { return lineality_; }

private:
  std::size_t lineality_;
};

/// Cone that is not full-dimensional where full dimension is required.
class DegenerateConeError : public Error {
public:
  using Error::Error;
};

/// Point or ray violating some row of the description.
class NotAMemberError : public Error {
public:
  using Error::Error;
};

/// Unknown row label.
class LookupError : public Error {
public:
  using Error::Error;
};

/// An enumeration or search ran past its node budget.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// Construction whose preconditions do not hold for the given input.
class InapplicableError : public Error {
public:
  using Error::Error;
};

/// A box oracle that breaks its bijectivity or max-preservation promise.
class MalformedOracleError : public Error {
public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace qsm
