#pragma once

#include "rho/model.hpp"
#include "rho/poly.hpp"

namespace rho {

// Degree-n solution of
//   (1 + xi^2/N) H'' - (2/N)(N_lambda + n - 1/2) xi H' + (n/N)(2 N_lambda + n) H = 0
// with leading coefficient prod_{j=1..n} (2 N_lambda + j) / N. This scale
// makes d/dxi H_n = (n (2 N_lambda + n) / N) H_{n-1} and reduces to the
// physicists' Hermite leading coefficient 2^n as N -> infinity.
struct RelHermite {
  int n = 0;
  ModelParams params;
  Poly poly;
};

// Physicists' Hermite polynomial H_n, leading coefficient 2^n.
Poly hermite_std(int n);

RelHermite relhermite(const ModelParams& params, int n);

// Applies the defining ODE operator and returns
// max |residual coefficient| / max |H coefficient|.
double relhermite_ode_residual(const ModelParams& params, int n);

}  // namespace rho
