#pragma once

#include <stdexcept>
#include <string>

namespace infharm {

// Base for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live over different variable sets or incompatible dimensions.
struct DimensionMismatch : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

// A coordinate carried by an exponential frequency received a substitution
// that is not a linear form.  Anything else (a genuine polynomial, or a
// nonzero constant offset) would leave the rational exponential-polynomial
// class, so the operation is refused rather than approximated.
struct NonAffineExponentSubstitution : Error {
  using Error::Error;
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// A metric determinant is not a single invertible term, so the cofactor
// inverse cannot be expressed inside the exponential-polynomial class.
struct NonInvertibleInClass : Error {
  using Error::Error;
};

// The (domain, target) pair carries no classification catalogue.
struct UnclassifiedPair : Error {
  using Error::Error;
};

struct GridTooLarge : Error {
  using Error::Error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

// Unreadable or malformed external input (matrix files, metric files).
struct IoError : Error {
  using Error::Error;
};

}  // namespace infharm
