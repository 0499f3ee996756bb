#pragma once

#include <Eigen/Dense>

#include "rho/model.hpp"

namespace rho {

// Dense polynomial in xi, coefficients in ascending powers. Trailing zeros
// are trimmed; the zero polynomial is canonical as an empty coefficient
// vector (degree() == -1).
class Poly {
 public:
  Poly() = default;
  explicit Poly(Eigen::VectorXd coeffs);

  static Poly constant(double a);
  static Poly monomial(int k, double a = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 0; }
  double coeff(int k) const;
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

  double operator()(double xi) const;  // Horner
  double max_abs_coeff() const;

  Poly derivative() const;
  Poly times_monomial(int k, double a = 1.0) const;  // * a xi^k

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(double a, const Poly& p);
  friend Poly operator-(const Poly& p);

 private:
  Eigen::VectorXd coeffs_;
};

// (1 + xi^2/N)^(-s/2) * P(xi) at fixed N, i.e. alpha^(-s) * P with
// alpha = sqrt(1 + xi^2/N). The exponent s counts powers of alpha and is
// non-negative for all states of the theory; intermediate algebra may use
// any real s.
struct WeightedPoly {
  double s = 0.0;
  Poly P;
};

// e^(-xi^2/2) * P(xi).
struct GaussPoly {
  Poly P;
};

// d/dxi of a WeightedPoly: (s+2, (1 + xi^2/N) P' - (s/N) xi P).
WeightedPoly wp_differentiate(const WeightedPoly& f, const ModelParams& params);

// Pointwise product: (s_f + s_g, P_f P_g). Both factors must share N.
WeightedPoly wp_multiply(const WeightedPoly& f, const WeightedPoly& g);

// Multiplication by alpha^2 = (1 + xi^2/N): pure weight cancellation.
WeightedPoly wp_times_alpha_sq(const WeightedPoly& f);

// Sum after promoting the lower exponent by (1 + xi^2/N) powers; the
// exponent gap must be a (numerically) even integer.
WeightedPoly wp_add(const WeightedPoly& f, const WeightedPoly& g, const ModelParams& params);

WeightedPoly wp_scale(double a, const WeightedPoly& f);

double wp_evaluate(const WeightedPoly& f, double xi, const ModelParams& params);

GaussPoly gp_differentiate(const GaussPoly& f);  // e^(-xi^2/2) (P' - xi P)
GaussPoly gp_mul_xi(const GaussPoly& f);
GaussPoly gp_add(const GaussPoly& f, const GaussPoly& g);
GaussPoly gp_scale(double a, const GaussPoly& f);
double gp_evaluate(const GaussPoly& f, double xi);

// Expansion of a Gaussian-family function over the normalized oscillator
// functions phi_k = pi^(-1/4) e^(-xi^2/2) H_k(xi) / (2^(k/2) sqrt(k!)).
// Exact and finite: index k runs to deg(P).
Eigen::VectorXd hermite_expand(const GaussPoly& f);

// Inverse of hermite_expand: sum_k c_k phi_k as a GaussPoly.
GaussPoly gauss_from_hermite(const Eigen::VectorXd& coeffs);

// Normalized oscillator function phi_k as a GaussPoly.
GaussPoly oscillator_function(int k);

}  // namespace rho
