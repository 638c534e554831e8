#pragma once

#include <stdexcept>
#include <string>

namespace monge {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument or evaluation point lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative procedure exhausted its budget before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed request: unknown names, missing parameters, bad configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace monge
