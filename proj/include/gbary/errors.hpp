#pragma once

#include <stdexcept>
#include <string>

namespace gbary {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSymmetricError : public Error {
 public:
  using Error::Error;
};

/// Input has an eigenvalue below the PSD tolerance.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

/// Input is not strictly positive definite.
class NotSpdError : public Error {
 public:
  NotSpdError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

/// A scalar matrix function was evaluated outside its domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue(eigenvalue) {}
  double eigenvalue;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class ZeroDegreeError : public Error {
 public:
  ZeroDegreeError(const std::string& what, int node) : Error(what), node(node) {}
  int node;
};

class NotConnectedError : public Error {
 public:
  using Error::Error;
};

class InfeasiblePerturbationError : public Error {
 public:
  using Error::Error;
};

class InvalidPermutationError : public Error {
 public:
  using Error::Error;
};

/// A Laplacian fails the connectivity assumption (PSD with a single
/// zero eigenvalue).
class AssumptionViolatedError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class InverseFilterDomainError : public Error {
 public:
  using Error::Error;
};

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& what, int iterations, double final_step)
      : Error(what), iterations(iterations), final_step(final_step) {}
  int iterations;
  double final_step;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line(line) {}
  int line;
};

class NonSymmetricInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace gbary
