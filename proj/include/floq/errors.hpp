#pragma once

#include <stdexcept>

namespace floq {

// Solver non-convergence, tolerance violations, failed ensembles.
// Distinct from std::invalid_argument (bad input / usage).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace floq
