#pragma once

#include <stdexcept>
#include <string>

namespace wickenum {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong lengths, bad weight keys, zero denominators.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A brute-force oracle was asked for an instance beyond its size guard.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// The saddle-point formulas need non-degenerate critical points.
class DegenerateCriticalPoint : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// The spherical Hessian has a positive eigenvalue, so x is not a maximizer.
class NotAMaximum : public Error {
 public:
  using Error::Error;
};

}  // namespace wickenum
