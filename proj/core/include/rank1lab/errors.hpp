#pragma once

#include <stdexcept>
#include <string>

namespace rank1lab {

/// Deformation gradient (or stretch parameter) outside the admissible set GL+(3).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix too close to singular for the requested operation.
class SingularError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation requires an isotropic material law.
class NotIsotropicError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rejection sampler exhausted its attempt budget.
class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal numerical consistency assertion failed (e.g. a Cauchy stress
/// that should be symmetric is not).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rank1lab
