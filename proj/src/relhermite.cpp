#include "rho/relhermite.hpp"

#include <stdexcept>

namespace rho {

Poly hermite_std(int n) {
  if (n < 0) throw std::invalid_argument("hermite_std: n >= 0 required");
  Poly hm1;                       // H_{-1} := 0
  Poly h = Poly::constant(1.0);   // H_0
  for (int k = 0; k < n; ++k) {
    // H_{k+1} = 2 xi H_k - 2k H_{k-1}
    Poly next = h.times_monomial(1, 2.0) - (2.0 * k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

RelHermite relhermite(const ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("relhermite: n >= 0 required");
  const double N = params.N;
  const double twoNl = 2.0 * params.Nlambda;

  Eigen::VectorXd a = Eigen::VectorXd::Zero(n + 1);
  double lead = 1.0;
  for (int j = 1; j <= n; ++j) lead *= (twoNl + j) / N;
  a[n] = lead;

  // Series substitution gives a_{k+2} = -(k-n)(k - 2N_lambda - n) a_k / (N (k+2)(k+1)).
  // Evaluated top-down from a_n so that the termination at k = n is exact.
  for (int k = n - 2; k >= 0; k -= 2) {
    a[k] = -N * (k + 2.0) * (k + 1.0) * a[k + 2] /
           ((k - n) * (k - twoNl - n));
  }
  return {n, params, Poly(a)};
}

double relhermite_ode_residual(const ModelParams& params, int n) {
  const Poly h = relhermite(params, n).poly;
  const double N = params.N;
  const double Nl = params.Nlambda;
  const Poly alpha_sq = Poly::constant(1.0) + Poly::monomial(2, 1.0 / N);

  const Poly res = alpha_sq * h.derivative().derivative() -
                   (2.0 / N) * (Nl + n - 0.5) * h.derivative().times_monomial(1) +
                   (n / N) * (2.0 * Nl + n) * h;
  const double scale = h.max_abs_coeff();
  return scale == 0.0 ? 0.0 : res.max_abs_coeff() / scale;
}

}  // namespace rho
