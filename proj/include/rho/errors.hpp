#pragma once

#include <stdexcept>

namespace rho {

// Numerical/domain failures surfaced by the library. The CLI maps parse
// problems to exit code 2 and these to exit code 3.

struct ComplexSpectrum : std::domain_error {
  using std::domain_error::domain_error;
};

struct DivergentIntegral : std::domain_error {
  using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecompositionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InconsistentSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateLevels : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a closed-form normalization constant disagrees with the
// numerically computed norm beyond tolerance.
struct ConventionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rho
