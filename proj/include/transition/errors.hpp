#ifndef TRANSITION_ERRORS_HPP
#define TRANSITION_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace transition {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An input violates a model invariant (A <= 0, beta outside (0, 1], ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Solver failures: bad bracket, non-finite objective, iteration cap.
class SolverError : public Error {
public:
  using Error::Error;
};

class InvalidBracket : public SolverError {
public:
  using SolverError::SolverError;
};

class NonFiniteObjective : public SolverError {
public:
  using SolverError::SolverError;
};

/// Malformed config, targets file or command-line value.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace transition

#endif // TRANSITION_ERRORS_HPP
