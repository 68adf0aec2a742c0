#pragma once

#include <stdexcept>
#include <string>

namespace weaklimit {

// Violated precondition: bad parameters, indices outside the documented
// ranges, coefficients that are not admissible.  The CLI maps these to the
// "invalid config" exit code.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative method ran out of budget (eigensolver sweeps, continued
// fraction depth, quadrature refinement) or detected numerical breakdown.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weaklimit
