#include "rho/model.hpp"

#include <cmath>
#include <string>

namespace rho {

ModelParams ModelParams::from_n_lambda(double N, double lambda) {
  if (!(N > 0.0)) throw ComplexSpectrum("ModelParams: N must be positive");
  const double radicand = 1.0 + 4.0 * N * (N - lambda);
  if (!(radicand > 0.0)) {
    throw ComplexSpectrum("ModelParams: 1 + 4N(N - lambda) <= 0, N_lambda not real (N=" +
                          std::to_string(N) + ", lambda=" + std::to_string(lambda) + ")");
  }
  ModelParams p;
  p.N = N;
  p.lambda = lambda;
  p.sigma = N * lambda;
  p.Nlambda = 0.5 * std::sqrt(radicand);
  p.chi = 0.5 * N * lambda;
  p.curvature = -2.0 / N;
  return p;
}

ModelParams ModelParams::from_n_sigma(double N, double sigma) {
  if (!(N > 0.0)) throw ComplexSpectrum("ModelParams: N must be positive");
  return from_n_lambda(N, sigma / N);
}

ModelParams derive_dimensionless(const PhysicalParams& phys, double lambda) {
  if (!phys.valid()) throw ComplexSpectrum("PhysicalParams: all fields must be positive");
  const double N = phys.m * phys.c * phys.c / (phys.hbar * phys.omega);
  return ModelParams::from_n_lambda(N, lambda);
}

EnergyPair energy_exact(const ModelParams& params, int n) {
  EnergyPair e;
  e.total = 0.5 + params.Nlambda + static_cast<double>(n);
  e.rest_subtracted = e.total - params.N;
  return e;
}

double energy_perturbative(const ModelParams& params, int n) {
  return (0.5 + n) + (1.0 - 4.0 * params.sigma) / (8.0 * params.N);
}

}  // namespace rho
