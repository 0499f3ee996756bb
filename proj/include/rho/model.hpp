#pragma once

#include "rho/errors.hpp"

namespace rho {

// Physical inputs. Only used at the interface boundary; everything
// downstream is dimensionless (lengths in sqrt(hbar/m omega), energies in
// hbar omega).
struct PhysicalParams {
  double m = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double c = 1.0;

  bool valid() const { return m > 0 && omega > 0 && hbar > 0 && c > 0; }
};

// Dimensionless reduction of the oscillator. N = m c^2 / (hbar omega) is
// the single relativistic knob; lambda and sigma = N*lambda are the two
// parametrizations of the coupling.
struct ModelParams {
  double N = 0.0;
  double lambda = 0.0;
  double sigma = 0.0;      // N * lambda, exactly
  double Nlambda = 0.0;    // (1/2) sqrt(1 + 4 N (N - lambda))
  double chi = 0.0;        // N * lambda / 2
  double curvature = 0.0;  // -2/N, scalar curvature in units of m omega / hbar

  static ModelParams from_n_lambda(double N, double lambda);
  static ModelParams from_n_sigma(double N, double sigma);
};

ModelParams derive_dimensionless(const PhysicalParams& phys, double lambda);

struct EnergyPair {
  double total = 0.0;            // units of hbar omega, rest mass included
  double rest_subtracted = 0.0;  // total - N
};

// Exact spectrum: E_n / (hbar omega) = 1/2 + N_lambda + n.
EnergyPair energy_exact(const ModelParams& params, int n);

// First-order spectrum in 1/N: (1/2 + n) + (1 - 4 sigma) / (8 N),
// rest-subtracted, in units of hbar omega.
double energy_perturbative(const ModelParams& params, int n);

}  // namespace rho
