#pragma once

#include <stdexcept>
#include <string>

namespace gmd {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few values for the requested operation.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Malformed or non-finite input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A quantity needed as a divisor or scale is zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

class DegenerateAuxError : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

// Floating-point failure: no root bracketed, cancellation beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmd
