#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasebal {

/// A request that is well formed but lies outside the regime where the
/// closed-form results hold (e.g. N > 3, signed gains for N = 3).
class OutOfScopeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The phase of an order parameter was needed but its magnitude is below
/// the definition threshold.
class UndefinedPhaseError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace phasebal
