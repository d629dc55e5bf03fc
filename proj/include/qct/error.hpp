#pragma once

#include <stdexcept>
#include <string>

namespace qct {

// Base class for every failure raised by the library. The CLI maps these to
// exit code 1; usage problems never reach this type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold for its inputs.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A computation exceeded a configured budget (field size, subset count, ...).
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace qct
