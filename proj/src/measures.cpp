#include "rho/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rho/errors.hpp"

namespace rho {

MeasureSpec MeasureSpec::power_weight(double s) {
  if (s < 0.0) throw std::invalid_argument("MeasureSpec: PowerWeight exponent must be >= 0");
  return {Kind::PowerWeight, s, 0.0};
}

namespace {

// Stirling correction J(z): lgamma(z) = (z-1/2) ln z - z + ln(2 pi)/2 + J(z).
double stirling_tail(double z) {
  const double z2 = z * z;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * z2)) / z2) / z2) / z;
}

}  // namespace

double log_gamma_ratio(double x, double d) {
  if (!(x > 0.0) || !(x + d > 0.0)) {
    throw std::invalid_argument("log_gamma_ratio: arguments must be positive");
  }
  if (x < 30.0 || x + d < 30.0) return std::lgamma(x + d) - std::lgamma(x);
  // (x+d-1/2) ln(x+d) - (x-1/2) ln x rewritten without cancellation.
  return (x - 0.5) * std::log1p(d / x) + d * (std::log(x + d) - 1.0) +
         stirling_tail(x + d) - stirling_tail(x);
}

double alpha_moment(const ModelParams& params, double s, int k) {
  if (k < 0) throw std::invalid_argument("alpha_moment: k >= 0 required");
  const double b = 0.5 * s - k - 0.5;
  if (!(b > 0.0)) {
    throw DivergentIntegral("alpha_moment: s/2 - k - 1/2 <= 0 (s=" + std::to_string(s) +
                            ", k=" + std::to_string(k) + ")");
  }
  // lgamma(b) - lgamma(s/2) = -(lgamma(b + k + 1/2) - lgamma(b))
  const double log_mom =
      (k + 0.5) * std::log(params.N) + std::lgamma(k + 0.5) - log_gamma_ratio(b, k + 0.5);
  return std::exp(log_mom);
}

double gauss_moment(int k) {
  if (k < 0) throw std::invalid_argument("gauss_moment: k >= 0 required");
  return std::exp(std::lgamma(k + 0.5));
}

namespace {

Poly perturbed_weight_poly(const MeasureSpec& measure, const ModelParams& params) {
  return Poly::constant(1.0) + Poly::monomial(2, measure.a / params.N);
}

// Neumaier-compensated accumulator for the moment sums.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += (std::abs(sum) >= std::abs(v)) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double total() const { return sum + carry; }
};

// Combined integrand of a WeightedPoly pair under a measure: total alpha
// exponent plus one polynomial factor.
struct CombinedWeighted {
  double s;
  Poly q;
};

CombinedWeighted combine(const WeightedPoly& f, const WeightedPoly& g,
                         const MeasureSpec& measure, const ModelParams& params) {
  CombinedWeighted c{f.s + g.s, f.P * g.P};
  switch (measure.kind) {
    case MeasureSpec::Kind::Flat:
      break;
    case MeasureSpec::Kind::PowerWeight:
      c.s += measure.s;
      break;
    case MeasureSpec::Kind::Perturbed:
      c.q = c.q * perturbed_weight_poly(measure, params);
      break;
    case MeasureSpec::Kind::GaussianNative:
      throw std::invalid_argument("integrate: GaussianNative measure with power-law integrand");
  }
  return c;
}

Poly combine_gauss(const GaussPoly& f, const GaussPoly& g, const MeasureSpec& measure,
                   const ModelParams& params) {
  Poly q = f.P * g.P;
  switch (measure.kind) {
    case MeasureSpec::Kind::Flat:
    case MeasureSpec::Kind::GaussianNative:
      break;
    case MeasureSpec::Kind::Perturbed:
      q = q * perturbed_weight_poly(measure, params);
      break;
    case MeasureSpec::Kind::PowerWeight:
      throw std::invalid_argument("integrate: PowerWeight measure with Gaussian integrand");
  }
  return q;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod 7-15 (QUADPACK nodes).

constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kGkWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct Panel {
  double a, b;
  double integral;
  double abs_integral;
  double err;
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double resk = kGkWeights[7] * fc;
  double resabs = kGkWeights[7] * std::abs(fc);
  double resg = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = half * kGkNodes[j];
    const double f1 = f(mid - x);
    const double f2 = f(mid + x);
    resk += kGkWeights[j] * (f1 + f2);
    resabs += kGkWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kGaussWeights[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.integral = resk * half;
  p.abs_integral = resabs * half;
  p.err = std::abs((resk - resg) * half);
  return p;
}

template <typename F>
double adaptive_quadrature(const F& f, double a, double b, double rel_tol) {
  constexpr int kMaxPanels = 20000;
  std::vector<Panel> panels;
  panels.push_back(gk15(f, a, b));

  for (;;) {
    double total = 0.0, total_abs = 0.0, total_err = 0.0;
    for (const Panel& p : panels) {
      total += p.integral;
      total_abs += p.abs_integral;
      total_err += p.err;
    }
    const double target = rel_tol * std::max({std::abs(total), 1e-3 * total_abs, 1e-300});
    if (total_err <= target) break;
    if (static_cast<int>(panels.size()) >= kMaxPanels) {
      throw NonConvergence("integrate_numeric: refinement stalled at " +
                           std::to_string(panels.size()) + " panels");
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.err < y.err; });
    const Panel w = *worst;
    *worst = gk15(f, w.a, 0.5 * (w.a + w.b));
    panels.push_back(gk15(f, 0.5 * (w.a + w.b), w.b));
  }

  // Deterministic final reduction, left to right.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  double total = 0.0;
  for (const Panel& p : panels) total += p.integral;
  return total;
}

}  // namespace

namespace {

// Integrability of every nonzero monomial: xi^j needs s > j + 1. Odd
// monomials contribute zero by parity but still must be individually
// integrable.
void check_integrable(const CombinedWeighted& c, const ModelParams& params) {
  for (int j = 0; j <= c.q.degree(); ++j) {
    if (c.q.coeff(j) == 0.0) continue;
    if (!(0.5 * c.s - 0.5 * j - 0.5 > 0.0)) {
      (void)alpha_moment(params, c.s, (j + 1) / 2);  // throws DivergentIntegral
    }
  }
}

}  // namespace

double integrate(const WeightedPoly& f, const WeightedPoly& g, const MeasureSpec& measure,
                 const ModelParams& params) {
  const CombinedWeighted c = combine(f, g, measure, params);
  if (c.q.is_zero()) return 0.0;
  check_integrable(c, params);
  Accumulator total;
  for (int k = 0; 2 * k <= c.q.degree(); ++k) {
    const double coeff = c.q.coeff(2 * k);
    if (coeff == 0.0) continue;  // odd monomials vanish by parity
    total.add(coeff * alpha_moment(params, c.s, k));
  }
  return total.total();
}

double integrate(const GaussPoly& f, const GaussPoly& g, const MeasureSpec& measure,
                 const ModelParams& params) {
  const Poly q = combine_gauss(f, g, measure, params);
  if (q.is_zero()) return 0.0;
  Accumulator total;
  for (int k = 0; 2 * k <= q.degree(); ++k) {
    const double coeff = q.coeff(2 * k);
    if (coeff == 0.0) continue;
    total.add(coeff * gauss_moment(k));
  }
  return total.total();
}

double integrate_numeric(const WeightedPoly& f, const WeightedPoly& g,
                         const MeasureSpec& measure, const ModelParams& params) {
  const CombinedWeighted c = combine(f, g, measure, params);
  if (c.q.is_zero()) return 0.0;
  check_integrable(c, params);

  const double sqrt_n = std::sqrt(params.N);
  const double s = c.s;
  const Eigen::VectorXd& coeffs = c.q.coeffs();
  // xi = sqrt(N) tan(theta) maps R to (-pi/2, pi/2); per-monomial evaluation
  // keeps sin^j cos^(s-2-j) bounded for every integrable monomial.
  const auto integrand = [&](double theta) {
    const double sn = std::sin(theta);
    const double cs = std::cos(theta);
    double acc = 0.0;
    double sin_pow = 1.0;  // sin^j
    for (int j = 0; j < coeffs.size(); ++j) {
      if (coeffs[j] != 0.0) {
        const double cos_pow = std::pow(cs, s - 2.0 - j);
        acc += coeffs[j] * std::pow(sqrt_n, j) * sin_pow * cos_pow;
      }
      sin_pow *= sn;
    }
    return sqrt_n * acc;
  };
  return adaptive_quadrature(integrand, -M_PI / 2.0, M_PI / 2.0, 1e-10);
}

double integrate_numeric(const GaussPoly& f, const GaussPoly& g, const MeasureSpec& measure,
                         const ModelParams& params) {
  const Poly q = combine_gauss(f, g, measure, params);
  if (q.is_zero()) return 0.0;
  const double L = std::max(10.0, 8.0 * std::sqrt(static_cast<double>(q.degree())));
  const auto integrand = [&](double xi) { return std::exp(-xi * xi) * q(xi); };
  return adaptive_quadrature(integrand, -L, L, 1e-10);
}

}  // namespace rho
