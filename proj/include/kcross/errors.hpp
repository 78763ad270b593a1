#pragma once

#include <stdexcept>
#include <string>

namespace kcross {

/// Base class for analysis failures (as opposed to invalid arguments, which
/// are reported with std::invalid_argument).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear spending rule with k = k_c: the equilibrium sits at infinity.
class DegeneratePolicyError : public Error {
 public:
  using Error::Error;
};

class NewtonError : public Error {
 public:
  enum class Reason { not_converged, singular_jacobian };

  NewtonError(Reason reason, const std::string& what)
      : Error(what), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// An integration step produced a non-finite state.
class StepFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace kcross
