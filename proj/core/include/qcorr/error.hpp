#pragma once

#include <stdexcept>

namespace qcorr {

// Input outside an operation's domain (bad parameters, invalid states,
// malformed files).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The Lindblad integrator produced a state that is no longer a density
// matrix (positivity lost beyond tolerance, non-finite entries).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcorr
