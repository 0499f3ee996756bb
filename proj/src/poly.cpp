#include "rho/poly.hpp"

#include <cmath>
#include <stdexcept>

#include "rho/relhermite.hpp"

namespace rho {

namespace {

Eigen::VectorXd trimmed(const Eigen::VectorXd& c) {
  int n = static_cast<int>(c.size());
  while (n > 0 && c[n - 1] == 0.0) --n;
  return c.head(n);
}

}  // namespace

Poly::Poly(Eigen::VectorXd coeffs) : coeffs_(trimmed(coeffs)) {}

Poly Poly::constant(double a) {
  if (a == 0.0) return Poly();
  Eigen::VectorXd c(1);
  c[0] = a;
  return Poly(c);
}

Poly Poly::monomial(int k, double a) {
  if (a == 0.0) return Poly();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
  c[k] = a;
  return Poly(c);
}

double Poly::coeff(int k) const {
  if (k < 0 || k >= coeffs_.size()) return 0.0;
  return coeffs_[k];
}

double Poly::operator()(double xi) const {
  double acc = 0.0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) acc = acc * xi + coeffs_[k];
  return acc;
}

double Poly::max_abs_coeff() const {
  return coeffs_.size() == 0 ? 0.0 : coeffs_.cwiseAbs().maxCoeff();
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  Eigen::VectorXd d(coeffs_.size() - 1);
  for (int k = 1; k < coeffs_.size(); ++k) d[k - 1] = k * coeffs_[k];
  return Poly(d);
}

Poly Poly::times_monomial(int k, double a) const {
  if (is_zero() || a == 0.0) return Poly();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(coeffs_.size() + k);
  c.tail(coeffs_.size()) = a * coeffs_;
  return Poly(c);
}

Poly operator+(const Poly& a, const Poly& b) {
  const Eigen::Index n = std::max(a.coeffs_.size(), b.coeffs_.size());
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c.head(a.coeffs_.size()) = a.coeffs_;
  c.head(b.coeffs_.size()) += b.coeffs_;
  return Poly(c);
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (int i = 0; i < a.coeffs_.size(); ++i)
    for (int j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly(c);
}

Poly operator*(double a, const Poly& p) {
  if (a == 0.0 || p.is_zero()) return Poly();
  return Poly(a * p.coeffs_);
}

Poly operator-(const Poly& p) { return -1.0 * p; }

WeightedPoly wp_differentiate(const WeightedPoly& f, const ModelParams& params) {
  // d/dxi [alpha^(-s) P] = alpha^(-s-2) [(1 + xi^2/N) P' - (s/N) xi P]
  const Poly alpha_sq = Poly::constant(1.0) + Poly::monomial(2, 1.0 / params.N);
  Poly q = alpha_sq * f.P.derivative() - f.P.times_monomial(1, f.s / params.N);
  return {f.s + 2.0, q};
}

WeightedPoly wp_multiply(const WeightedPoly& f, const WeightedPoly& g) {
  return {f.s + g.s, f.P * g.P};
}

WeightedPoly wp_times_alpha_sq(const WeightedPoly& f) { return {f.s - 2.0, f.P}; }

WeightedPoly wp_add(const WeightedPoly& f, const WeightedPoly& g, const ModelParams& params) {
  const double gap = f.s - g.s;
  const double half = 0.5 * gap;
  const long k = std::lround(half);
  if (std::abs(half - static_cast<double>(k)) > 1e-9) {
    throw std::invalid_argument("wp_add: exponent gap must be an even integer");
  }
  const Poly alpha_sq = Poly::constant(1.0) + Poly::monomial(2, 1.0 / params.N);
  if (k >= 0) {
    // g has the lower exponent; promote it to s_f.
    Poly q = g.P;
    for (long i = 0; i < k; ++i) q = q * alpha_sq;
    return {f.s, f.P + q};
  }
  Poly q = f.P;
  for (long i = 0; i < -k; ++i) q = q * alpha_sq;
  return {g.s, q + g.P};
}

WeightedPoly wp_scale(double a, const WeightedPoly& f) { return {f.s, a * f.P}; }

double wp_evaluate(const WeightedPoly& f, double xi, const ModelParams& params) {
  const double logw = -0.5 * f.s * std::log1p(xi * xi / params.N);
  return std::exp(logw) * f.P(xi);
}

GaussPoly gp_differentiate(const GaussPoly& f) {
  return {f.P.derivative() - f.P.times_monomial(1)};
}

GaussPoly gp_mul_xi(const GaussPoly& f) { return {f.P.times_monomial(1)}; }

GaussPoly gp_add(const GaussPoly& f, const GaussPoly& g) { return {f.P + g.P}; }

GaussPoly gp_scale(double a, const GaussPoly& f) { return {a * f.P}; }

double gp_evaluate(const GaussPoly& f, double xi) {
  return std::exp(-0.5 * xi * xi) * f.P(xi);
}

namespace {

// log of pi^(1/4) 2^(k/2) sqrt(k!), the factor between e^(-xi^2/2) H_k and
// the unit-norm oscillator function phi_k.
double log_hermite_norm(int k) {
  return 0.25 * std::log(M_PI) + 0.5 * k * std::log(2.0) + 0.5 * std::lgamma(k + 1.0);
}

}  // namespace

Eigen::VectorXd hermite_expand(const GaussPoly& f) {
  const int deg = f.P.degree();
  if (deg < 0) return Eigen::VectorXd();
  // Triangular change of basis: peel H_d off the top degree repeatedly.
  Eigen::VectorXd work = Eigen::VectorXd::Zero(deg + 1);
  work.head(f.P.coeffs().size()) = f.P.coeffs();
  Eigen::VectorXd h = Eigen::VectorXd::Zero(deg + 1);
  for (int d = deg; d >= 0; --d) {
    const double lead = std::exp2(d);  // leading coefficient of H_d
    h[d] = work[d] / lead;
    if (h[d] != 0.0) {
      const Poly hd = hermite_std(d);
      for (int k = 0; k <= d; ++k) work[k] -= h[d] * hd.coeff(k);
    }
  }
  Eigen::VectorXd c(deg + 1);
  for (int k = 0; k <= deg; ++k) c[k] = h[k] * std::exp(log_hermite_norm(k));
  return c;
}

GaussPoly gauss_from_hermite(const Eigen::VectorXd& coeffs) {
  Poly p;
  for (int k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    p = p + std::exp(-log_hermite_norm(k)) * coeffs[k] * hermite_std(k);
  }
  return {p};
}

GaussPoly oscillator_function(int k) {
  return {std::exp(-log_hermite_norm(k)) * hermite_std(k)};
}

}  // namespace rho
