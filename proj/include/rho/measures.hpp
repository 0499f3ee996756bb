#pragma once

#include "rho/model.hpp"
#include "rho/poly.hpp"

namespace rho {

// Integration weight on the xi-line.
//   Flat            : d(xi)
//   PowerWeight(s)  : alpha^(-s) d(xi),  alpha = sqrt(1 + xi^2/N)
//   Perturbed(a)    : (1 + a xi^2/N) d(xi), understood to first order in 1/N
//   GaussianNative  : d(xi), valid only for Gaussian-family integrands
struct MeasureSpec {
  enum class Kind { Flat, PowerWeight, Perturbed, GaussianNative };
  Kind kind = Kind::Flat;
  double s = 0.0;  // PowerWeight exponent
  double a = 0.0;  // Perturbed coefficient

  static MeasureSpec flat() { return {Kind::Flat, 0.0, 0.0}; }
  static MeasureSpec power_weight(double s);
  static MeasureSpec perturbed(double a) { return {Kind::Perturbed, 0.0, a}; }
  static MeasureSpec gaussian_native() { return {Kind::GaussianNative, 0.0, 0.0}; }
};

// log Gamma(x + d) - log Gamma(x) for x > 0, x + d > 0, evaluated without
// the cancellation of two large lgamma values (Stirling form for large x).
double log_gamma_ratio(double x, double d);

// Closed form for int xi^(2k) (1 + xi^2/N)^(-s/2) d(xi)
//   = N^(k+1/2) B(k + 1/2, s/2 - k - 1/2),
// via log-Gamma. Throws DivergentIntegral unless s/2 - k - 1/2 > 0.
double alpha_moment(const ModelParams& params, double s, int k);

// int xi^(2k) e^(-xi^2) d(xi) = Gamma(k + 1/2).
double gauss_moment(int k);

// Exact linear combination of moments, summed in ascending k.
double integrate(const WeightedPoly& f, const WeightedPoly& g, const MeasureSpec& measure,
                 const ModelParams& params);
double integrate(const GaussPoly& f, const GaussPoly& g, const MeasureSpec& measure,
                 const ModelParams& params);

// Independent adaptive-quadrature oracle (Gauss-Kronrod 7-15). Power-law
// weights are integrated after xi = sqrt(N) tan(theta); the Gaussian family
// on [-L, L] with L = max(10, 8 sqrt(deg)). Relative tolerance 1e-10.
double integrate_numeric(const WeightedPoly& f, const WeightedPoly& g,
                         const MeasureSpec& measure, const ModelParams& params);
double integrate_numeric(const GaussPoly& f, const GaussPoly& g, const MeasureSpec& measure,
                         const ModelParams& params);

}  // namespace rho
