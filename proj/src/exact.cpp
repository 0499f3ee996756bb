#include "rho/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rho/errors.hpp"
#include "rho/relhermite.hpp"

namespace rho {

namespace {

void require_same_params(const ModelParams& a, const ModelParams& b, const char* who) {
  if (a.N != b.N || a.lambda != b.lambda) {
    throw std::invalid_argument(std::string(who) + ": states must share ModelParams");
  }
}

// Shared head of both closed-form constants (xi units):
// pi^(-1/4) 2^(-n/2) / sqrt(n!) * sqrt(Gamma(2Nl+1) (2N)^n / Gamma(2Nl+n+1)).
double log_cn_head(const ModelParams& p, int n) {
  const double twoNl = 2.0 * p.Nlambda;
  return -0.25 * std::log(M_PI) - 0.5 * n * std::log(2.0) - 0.5 * std::lgamma(n + 1.0) +
         0.5 * (n * std::log(2.0 * p.N) - log_gamma_ratio(twoNl + 1.0, n));
}

}  // namespace

double closed_form_norm_tx(const ModelParams& p, int n) {
  const double Nl = p.Nlambda;
  const double log_tail = 0.5 * (log_gamma_ratio(Nl, 0.5) - 0.5 * std::log(p.N));
  return std::exp(log_cn_head(p, n) + log_tail);
}

double closed_form_norm_x(const ModelParams& p, int n) {
  const double Nl = p.Nlambda;
  const double log_tail = 0.5 * (std::log(Nl + n + 0.5) - std::log(Nl + 0.5)) +
                          0.5 * (log_gamma_ratio(Nl + 1.0, 0.5) - 0.5 * std::log(p.N));
  return std::exp(log_cn_head(p, n) + log_tail);
}

ExactState exact_state(const ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("exact_state: n >= 0 required");
  ExactState st;
  st.n = n;
  st.params = params;
  st.c_n = 0.5 + params.Nlambda + n;
  st.b_n = st.c_n;
  st.wp = WeightedPoly{st.c_n, relhermite(params, n).poly};

  const double norm2_x = integrate(st.wp, st.wp, MeasureSpec::power_weight(2.0), params);
  const double norm2_tx = integrate(st.wp, st.wp, MeasureSpec::flat(), params);
  st.norm_x = 1.0 / std::sqrt(norm2_x);
  st.norm_tx = 1.0 / std::sqrt(norm2_tx);

  const double ref_x = closed_form_norm_x(params, n);
  const double ref_tx = closed_form_norm_tx(params, n);
  if (std::abs(st.norm_x / ref_x - 1.0) > 1e-9 || std::abs(st.norm_tx / ref_tx - 1.0) > 1e-9) {
    throw ConventionMismatch("exact_state: closed-form constant disagrees with numerical norm at n=" +
                             std::to_string(n));
  }
  return st;
}

double inner_tx(const ExactState& a, const ExactState& b) {
  require_same_params(a.params, b.params, "inner_tx");
  if (a.n != b.n) return 0.0;  // analytic time integral over one period
  return a.norm_tx * b.norm_tx * integrate(a.wp, b.wp, MeasureSpec::flat(), a.params);
}

double inner_x(const ExactState& a, const ExactState& b, const MeasureSpec& measure) {
  return inner_x_moment(a, b, measure, 0);
}

double inner_x_moment(const ExactState& a, const ExactState& b, const MeasureSpec& measure,
                      int xi_power) {
  require_same_params(a.params, b.params, "inner_x");
  const WeightedPoly rhs{b.wp.s, b.wp.P.times_monomial(xi_power)};
  return a.norm_x * b.norm_x * integrate(a.wp, rhs, measure, a.params);
}

double evaluate_x(const ExactState& state, double xi) {
  return state.norm_x * wp_evaluate(state.wp, xi, state.params);
}

KgResidual kg_residual(const ModelParams& params, int n, RestMass form, double b_offset) {
  const double N = params.N;
  const double c = 0.5 + params.Nlambda + n;
  const double b = c + b_offset;
  const Poly h = relhermite(params, n).poly;

  const WeightedPoly F{c, h};
  const WeightedPoly dF = wp_differentiate(F, params);    // s = c + 2
  const WeightedPoly ddF = wp_differentiate(dF, params);  // s = c + 4

  // All terms in units of (hbar omega)^2, xi variable, at exponent c + 2.
  double time_coeff;
  if (form == RestMass::Subtracted) {
    // phi_tt, phi_t and the alpha^{-2} mass term of the six-term equation,
    // with i hbar d/dt -> (b - N) hbar omega on the rest-subtracted field.
    const double beta = b - N;
    time_coeff = -(beta * beta + 2.0 * N * beta + N * N);
  } else {
    // Box form on the rest-restored field with time factor e^{-i b omega t}.
    time_coeff = -b * b;
  }

  const WeightedPoly t_time{c + 2.0, time_coeff * h};
  const WeightedPoly t_drift{c + 2.0, -2.0 * dF.P.times_monomial(1)};
  const WeightedPoly t_lap = wp_scale(-N, wp_times_alpha_sq(ddF));  // s = c + 2
  // The rest-mass restoration and the chi R coupling live at exponent c.
  const WeightedPoly t_mass{c, (N * N - params.lambda * N) * h};

  const WeightedPoly res =
      wp_add(wp_add(wp_add(t_time, t_drift, params), t_lap, params), t_mass, params);

  const Poly alpha_sq = Poly::constant(1.0) + Poly::monomial(2, 1.0 / N);
  const Poly mass_promoted = alpha_sq * t_mass.P;
  double scale = std::max({t_time.P.max_abs_coeff(), t_drift.P.max_abs_coeff(),
                           t_lap.P.max_abs_coeff(), mass_promoted.max_abs_coeff()});
  KgResidual out{res, 0.0};
  out.relative = scale == 0.0 ? 0.0 : res.P.max_abs_coeff() / scale;
  return out;
}

LadderAction ladder_coeff(const ModelParams& params, LadderKind kind, int n) {
  if (n < 0) throw std::invalid_argument("ladder_coeff: n >= 0 required");
  const double N = params.N;
  const double Nl = params.Nlambda;
  switch (kind) {
    case LadderKind::Z:
      if (n == 0) return {0.0, -1};
      return {std::sqrt(n * (2.0 * Nl + n) / (2.0 * N)), n - 1};
    case LadderKind::Zdag:
      return {std::sqrt((n + 1.0) * (2.0 * Nl + n + 1.0) / (2.0 * N)), n + 1};
    case LadderKind::Zp: {
      if (n == 0) return {0.0, -1};
      const LadderAction base = ladder_coeff(params, LadderKind::Z, n);
      return {base.amplitude * std::sqrt((Nl + n - 0.5) / (Nl + n + 0.5)), base.target};
    }
    case LadderKind::Zpdag: {
      const LadderAction base = ladder_coeff(params, LadderKind::Zdag, n);
      return {base.amplitude * std::sqrt((Nl + n + 1.5) / (Nl + n + 0.5)), base.target};
    }
  }
  throw std::invalid_argument("ladder_coeff: unknown kind");
}

namespace {

// Divide P by (1 + xi^2/N) in ascending powers: the unit constant term
// keeps the recursion contractive (top-down division would amplify
// roundoff by N per level through the 1/N leading coefficient). For an
// exact multiple the two top-order consistency slots vanish; they are
// returned as the remainder.
Poly divide_alpha_sq(const Poly& p, double N, Poly* rem) {
  const int d = p.degree();
  if (d < 2) {
    *rem = p;
    return Poly();
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
  w.head(p.coeffs().size()) = p.coeffs();
  Eigen::VectorXd q = Eigen::VectorXd::Zero(d - 1);
  for (int j = 0; j <= d - 2; ++j) {
    q[j] = w[j] - (j >= 2 ? q[j - 2] / N : 0.0);
  }
  Eigen::VectorXd r(2);
  r[0] = w[d - 1] - (d - 3 >= 0 ? q[d - 3] / N : 0.0);
  r[1] = w[d] - q[d - 2] / N;
  *rem = Poly(r);
  return Poly(q);
}

// Coefficients of P over the relativistic Hermite basis (triangular peel).
Eigen::VectorXd relhermite_coefficients(const Poly& p, const ModelParams& params) {
  const int d = p.degree();
  if (d < 0) return Eigen::VectorXd();
  std::vector<Poly> basis(d + 1);
  for (int k = 0; k <= d; ++k) basis[k] = relhermite(params, k).poly;
  Eigen::VectorXd work = Eigen::VectorXd::Zero(d + 1);
  work.head(p.coeffs().size()) = p.coeffs();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d + 1);
  for (int k = d; k >= 0; --k) {
    const double lead = basis[k].coeff(k);
    out[k] = work[k] / lead;
    if (out[k] != 0.0) {
      for (int j = 0; j <= k; ++j) work[j] -= out[k] * basis[k].coeff(j);
    }
  }
  return out;
}

}  // namespace

LadderDecomposition ladder_apply_differential(const ModelParams& params, LadderKind kind, int n) {
  if (kind != LadderKind::Z && kind != LadderKind::Zdag) {
    throw std::invalid_argument("ladder_apply_differential: differential form only for Z, Zdag");
  }
  const double N = params.N;
  const double c_n = 0.5 + params.Nlambda + n;
  const double b = c_n;  // time frequency equals the weight exponent
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  // In xi units, acting on the rest-subtracted field (i hbar d/dt -> (b-N) hbar omega):
  //   Z    = (1/sqrt2) [  alpha d/dxi + (b/N) xi / alpha ]
  //   Zdag = (1/sqrt2) [ -alpha d/dxi + (b/N) xi / alpha ]
  // Closed-form t-x constants on both sides keep this certificate a pure
  // algebra statement, independent of the moment engine.
  const WeightedPoly in{c_n, closed_form_norm_tx(params, n) * relhermite(params, n).poly};
  const WeightedPoly din = wp_differentiate(in, params);  // s = c_n + 2
  const double dsign = (kind == LadderKind::Z) ? 1.0 : -1.0;
  // alpha * (s = c_n+2 part) and xi/alpha * (s = c_n part) both land at
  // exponent c_n + 1.
  const Poly raw_poly = inv_sqrt2 * (dsign * din.P + (b / N) * in.P.times_monomial(1));

  LadderDecomposition out;
  const double in_scale = in.P.max_abs_coeff();
  if (raw_poly.max_abs_coeff() <= 1e-12 * in_scale) {
    out.components = Eigen::VectorXd::Zero(1);
    out.target = -1;
    out.amplitude = 0.0;
    out.spurious_max = raw_poly.max_abs_coeff() / in_scale;
    return out;
  }

  Poly reduced;
  int target;
  if (kind == LadderKind::Z) {
    // Result exponent c_{n-1} = raw_s - 2: the polynomial must factor
    // through alpha^2; a significant remainder means the result left the
    // state family.
    Poly rem;
    reduced = divide_alpha_sq(raw_poly, N, &rem);
    if (rem.max_abs_coeff() > 1e-9 * raw_poly.max_abs_coeff()) {
      throw DecompositionFailure("ladder_apply_differential: alpha^2 division remainder " +
                                 std::to_string(rem.max_abs_coeff() / raw_poly.max_abs_coeff()));
    }
    target = n - 1;
  } else {
    reduced = raw_poly;
    target = n + 1;
  }

  const Eigen::VectorXd q = relhermite_coefficients(reduced, params);
  out.components = Eigen::VectorXd::Zero(q.size());
  for (int k = 0; k < q.size(); ++k) {
    out.components[k] = q[k] / closed_form_norm_tx(params, k);
  }
  out.target = target;
  out.amplitude = target < q.size() ? out.components[target] : 0.0;
  out.spurious_max = 0.0;
  for (int k = 0; k < q.size(); ++k) {
    if (k == target) continue;
    out.spurious_max = std::max(out.spurious_max, std::abs(out.components[k]));
  }
  if (out.spurious_max > 1e-8) {
    throw DecompositionFailure("ladder_apply_differential: " + std::to_string(out.spurious_max) +
                               " spurious component at n=" + std::to_string(n));
  }
  return out;
}

double u_map_factor(const ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("u_map_factor: n >= 0 required");
  return std::sqrt((0.5 + params.Nlambda + n) / params.Nlambda);
}

}  // namespace rho
