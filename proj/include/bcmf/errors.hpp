#pragma once

#include <stdexcept>
#include <string>

namespace bcmf {

// Base of every error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of an operation (x not in the support, bad λ, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation's documented precondition was not met by otherwise valid input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the range where a construction exists.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The greedy expansion of 1 terminates and no quasi-greedy substitute was requested.
class FiniteExpansionAmbiguous : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace bcmf
