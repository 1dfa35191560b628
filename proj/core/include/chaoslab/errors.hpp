#pragma once

#include <stdexcept>
#include <string>

namespace chaoslab {

// Caller passed a value outside an operation's documented domain.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Requested problem does not fit the dense full-space representation.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

// An input violated a numerical invariant (Hermiticity, trace, normalization...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// LAPACK reported a failure.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, int info) : std::runtime_error(what), info_(info) {}
    int info() const noexcept { return info_; }

  private:
    int info_;
};

// Too many tasks of an ensemble run failed for its averages to be trusted.
class SweepError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An output file or directory could not be written.
class OutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace chaoslab
