#pragma once

// Test-only oracles, independent of the library paths they certify.

#include <cmath>
#include <cstdint>
#include <random>

#include "rho/measures.hpp"
#include "rho/model.hpp"
#include "rho/poly.hpp"

namespace oracles {

// Central finite difference of a pointwise function.
template <typename F>
double central_diff(const F& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Oscillator-expansion coefficient via direct Gaussian-moment projection,
// c_k = int phi_k(xi) f(xi) d(xi), phi_k = pi^(-1/4) e^(-xi^2/2) H_k / (2^(k/2) sqrt(k!)).
// Independent of rho::hermite_expand's triangular change of basis.
inline double hermite_coefficient_by_moments(const rho::GaussPoly& f, int k) {
  const rho::GaussPoly phi_k = rho::oscillator_function(k);
  const rho::Poly q = phi_k.P * f.P;  // integrand e^(-xi^2) q(xi)
  double total = 0.0;
  for (int j = 0; 2 * j <= q.degree(); ++j) {
    total += q.coeff(2 * j) * std::exp(std::lgamma(j + 0.5));
  }
  return total;
}

// Deterministic uniform double in [lo, hi), independent of libstdc++
// distribution internals.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline rho::Poly random_poly(std::mt19937_64& rng, int deg, double lo = -1.0, double hi = 1.0) {
  Eigen::VectorXd c(deg + 1);
  for (int k = 0; k <= deg; ++k) c[k] = uniform(rng, lo, hi);
  if (c[deg] == 0.0) c[deg] = 0.5;
  return rho::Poly(c);
}

}  // namespace oracles
