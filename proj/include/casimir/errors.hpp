#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The requested physical regime is outside the validity of the formula
/// (e.g. a relativistic speed fed to non-relativistic kinematics).
class RegimeError : public Error {
public:
  using Error::Error;
};

/// A correlator denominator vanishes (light cone of a point or of an image).
class SingularityError : public Error {
public:
  using Error::Error;
};

/// An integration corner lies on the singular locus of the kernel, so the
/// antiderivative has a logarithmic pole there.
class PoleTouchError : public Error {
public:
  using Error::Error;
};

/// The oracle declines to integrate directly across a pole.
class RefusalError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A series or quadrature did not reach its tolerance within budget.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace casimir
