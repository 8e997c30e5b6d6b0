#ifndef HYPERHARMONIC_ERRORS_HPP_
#define HYPERHARMONIC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hyperharmonic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument sits (numerically) on a pole of Gamma or digamma.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the documented domain of an operation or identity.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series diverges, or did not reach its tolerance within max_terms.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

/// The epsilon table hit a singular or non-finite entry.
class AccelerationBreakdown : public Error {
 public:
  using Error::Error;
};

/// Unknown identity or transformation id.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// A user-supplied function failed during numerical differentiation.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperharmonic

#endif  // HYPERHARMONIC_ERRORS_HPP_
