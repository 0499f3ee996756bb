#include "rho/perturb.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rho/errors.hpp"
#include "rho/exact.hpp"
#include "rho/relhermite.hpp"

namespace rho {

PerturbedHamiltonian perturbed_hamiltonian(const ModelParams& params) {
  PerturbedHamiltonian h;
  h.params = params;
  h.terms = {
      {2, Poly::constant(-0.5), 0},
      {0, Poly::monomial(2, 0.5), 0},
      {4, Poly::constant(-0.125), 1},
      {2, Poly::monomial(2, -0.75), 1},
      {1, Poly::monomial(1, -0.5), 1},
      {0, Poly::monomial(4, -0.125), 1},
      {0, Poly::constant(0.25 * (1.0 - 2.0 * params.sigma)), 1},
  };
  return h;
}

GaussPoly apply_hamiltonian(const PerturbedHamiltonian& h, const GaussPoly& f,
                            int through_npow) {
  GaussPoly out;
  for (const HamiltonianTerm& t : h.terms) {
    if (t.npow > through_npow) continue;
    GaussPoly df = f;
    for (int d = 0; d < t.dorder; ++d) df = gp_differentiate(df);
    const double scale = std::pow(h.params.N, -static_cast<double>(t.npow));
    out = gp_add(out, GaussPoly{scale * (t.coeff * df.P)});
  }
  return out;
}

Eigen::MatrixXd hamiltonian_matrix_dense(const PerturbedHamiltonian& h, int nmax,
                                         const MeasureSpec& measure) {
  if (nmax < 4) throw std::invalid_argument("hamiltonian_matrix: nmax >= 4 required");
  Eigen::MatrixXd m(nmax + 1, nmax + 1);
  std::vector<GaussPoly> phi(nmax + 1);
  std::vector<GaussPoly> hphi(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    phi[n] = oscillator_function(n);
    hphi[n] = apply_hamiltonian(h, phi[n]);
  }
  for (int row = 0; row <= nmax; ++row)
    for (int col = 0; col <= nmax; ++col)
      m(row, col) = integrate(phi[row], hphi[col], measure, h.params);
  return m;
}

OperatorMatrix hamiltonian_matrix(const PerturbedHamiltonian& h, int nmax,
                                  const MeasureSpec& measure) {
  OperatorMatrix op;
  op.entries = hamiltonian_matrix_dense(h, nmax, measure).cast<std::complex<double>>();
  op.basis = BasisTag::Oscillator;
  op.measure = measure;
  op.nmax = nmax;
  op.bandwidth = 4;
  op.interior_lo = 0;
  op.interior_hi = nmax;
  return op;
}

HermiticityDefect hermiticity_defect(const PerturbedHamiltonian& h, int nmax,
                                     const MeasureSpec& measure) {
  const Eigen::MatrixXd m = hamiltonian_matrix_dense(h, nmax, measure);
  HermiticityDefect d;
  d.defect = m - m.transpose().eval();
  d.norm = d.defect.cwiseAbs().maxCoeff();
  return d;
}

namespace {

// Order-1/N blocks for the measure solve. Assembled by orthonormal
// projection (hermite_expand is an exact change of basis), which keeps the
// strictly-first-order system free of moment-summation cancellation noise.

// W(m,n) = <phi_m| N (H - H_osc) |phi_n>, N-independent apart from sigma.
Eigen::MatrixXd correction_block(const PerturbedHamiltonian& h, int nmax) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    const GaussPoly phi = oscillator_function(n);
    GaussPoly acc;
    for (const HamiltonianTerm& t : h.terms) {
      if (t.npow != 1) continue;
      GaussPoly df = phi;
      for (int d = 0; d < t.dorder; ++d) df = gp_differentiate(df);
      acc = gp_add(acc, GaussPoly{t.coeff * df.P});
    }
    const Eigen::VectorXd col = hermite_expand(acc);
    for (int m = 0; m <= nmax && m < col.size(); ++m) w(m, n) = col[m];
  }
  return w;
}

// X(m,n) = <phi_m| xi^2 |phi_n>.
Eigen::MatrixXd xi_sq_block(int nmax) {
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(nmax + 1, nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    const Eigen::VectorXd col =
        hermite_expand(GaussPoly{oscillator_function(n).P.times_monomial(2)});
    for (int m = 0; m <= nmax && m < col.size(); ++m) x2(m, n) = col[m];
  }
  return x2;
}

}  // namespace

Eigen::MatrixXd first_order_defect_matrix(const PerturbedHamiltonian& h, int nmax, double a) {
  const Eigen::MatrixXd w = correction_block(h, nmax);
  const Eigen::MatrixXd x2 = xi_sq_block(nmax);
  Eigen::MatrixXd block(nmax + 1, nmax + 1);
  for (int m = 0; m <= nmax; ++m)
    for (int n = 0; n <= nmax; ++n) block(m, n) = w(m, n) + a * (n + 0.5) * x2(m, n);
  return block - block.transpose().eval();
}

double first_order_defect(const PerturbedHamiltonian& h, int nmax, double a) {
  return first_order_defect_matrix(h, nmax, a).cwiseAbs().maxCoeff();
}

MeasureSolve solve_perturbed_measure(const PerturbedHamiltonian& h, int nmax) {
  if (nmax < 6) throw std::invalid_argument("solve_perturbed_measure: nmax >= 6 required");
  const Eigen::MatrixXd w = correction_block(h, nmax);
  const Eigen::MatrixXd x2 = xi_sq_block(nmax);

  // Rows of the overdetermined system: for each pair m < n,
  //   W(m,n) - W(n,m) = a (m - n) X(m,n).
  double gg = 0.0, gd = 0.0;
  for (int m = 0; m < nmax; ++m)
    for (int n = m + 1; n <= nmax; ++n) {
      const double g = (m - n) * x2(m, n);
      const double d = w(m, n) - w(n, m);
      gg += g * g;
      gd += g * d;
    }
  if (gg == 0.0) throw InconsistentSystem("solve_perturbed_measure: degenerate design");

  MeasureSolve out;
  out.a = gd / gg;
  for (int m = 0; m < nmax; ++m)
    for (int n = m + 1; n <= nmax; ++n) {
      const double g = (m - n) * x2(m, n);
      const double d = w(m, n) - w(n, m);
      out.residual = std::max(out.residual, std::abs(d - out.a * g));
    }
  if (out.residual > 1e-8) {
    throw InconsistentSystem("solve_perturbed_measure: least-squares residual " +
                             std::to_string(out.residual));
  }
  return out;
}

PerturbativeState perturbative_state(const ModelParams& params, int n, bool normalized) {
  if (n < 0) throw std::invalid_argument("perturbative_state: n >= 0 required");
  const double N = params.N;
  const double dn = n;
  PerturbativeState st;
  st.n = n;
  st.params = params;

  if (!normalized) {
    // First-order eigenfunction from its Hermite-polynomial form,
    //   pi^(-1/4) e^(-xi^2/2) / (2^(n/2) sqrt(n!)) *
    //   (H_n + (1/8N)[H_{n+4}/8 + H_{n+2} + 4n(n-1) H_{n-2}
    //                 - 2n(n-1)(n-2)(n-3) H_{n-4}]).
    // Prefactors of the negative-index terms vanish identically for n < 4.
    const double c_dn2 = 4.0 * dn * (dn - 1);
    const double c_dn4 = -2.0 * dn * (dn - 1) * (dn - 2) * (dn - 3);
    assert(n >= 2 || c_dn2 == 0.0);
    assert(n >= 4 || c_dn4 == 0.0);
    Poly bracket = hermite_std(n) + (1.0 / (8.0 * N)) * (0.125 * hermite_std(n + 4)) +
                   (1.0 / (8.0 * N)) * hermite_std(n + 2);
    if (n >= 2) bracket = bracket + (c_dn2 / (8.0 * N)) * hermite_std(n - 2);
    if (n >= 4) bracket = bracket + (c_dn4 / (8.0 * N)) * hermite_std(n - 4);
    const double prefactor =
        std::exp(-0.25 * std::log(M_PI) - 0.5 * n * std::log(2.0) - 0.5 * std::lgamma(n + 1.0));
    st.gp = GaussPoly{prefactor * bracket};
    st.basis_coeffs = hermite_expand(st.gp);
    return st;
  }

  // Unit-norm form from its closed-form oscillator-basis coefficients.
  st.basis_coeffs = Eigen::VectorXd::Zero(n + 5);
  st.basis_coeffs[n + 4] = std::sqrt((dn + 1) * (dn + 2) * (dn + 3) * (dn + 4)) / (16.0 * N);
  st.basis_coeffs[n + 2] = 4.0 * std::sqrt((dn + 1) * (dn + 2)) / (16.0 * N);
  st.basis_coeffs[n] = 1.0 + (2.0 * dn + 1.0) / (4.0 * N);
  if (n >= 2) st.basis_coeffs[n - 2] = 4.0 * std::sqrt(dn * (dn - 1)) / (16.0 * N);
  if (n >= 4)
    st.basis_coeffs[n - 4] = -std::sqrt(dn * (dn - 1) * (dn - 2) * (dn - 3)) / (16.0 * N);
  st.gp = gauss_from_hermite(st.basis_coeffs);
  return st;
}

RsFirstOrder rs_first_order(const PerturbedHamiltonian& h, int nmax, int n) {
  if (n + 4 > nmax) throw std::invalid_argument("rs_first_order: n + 4 <= nmax required");
  const Eigen::MatrixXd m = hamiltonian_matrix_dense(h, nmax, MeasureSpec::flat());
  RsFirstOrder out;
  out.shift = m(n, n) - (n + 0.5);
  out.mixing = Eigen::VectorXd::Zero(nmax + 1);
  for (int k = 0; k <= nmax; ++k) {
    if (k == n) continue;
    const double gap = static_cast<double>(n - k);  // oscillator spectrum, non-degenerate
    if (gap == 0.0) throw DegenerateLevels("rs_first_order: degenerate unperturbed levels");
    out.mixing[k] = m(k, n) / gap;
  }
  return out;
}

SupNormComparison compare_exact_vs_perturbative(const ModelParams& params, int n) {
  const ExactState exact = exact_state(params, n);
  const PerturbativeState pert = perturbative_state(params, n, true);
  constexpr int kPoints = 321;
  double sup = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double xi = -4.0 + 8.0 * i / (kPoints - 1);
    sup = std::max(sup, std::abs(evaluate_x(exact, xi) - gp_evaluate(pert.gp, xi)));
  }
  return {sup, sup * params.N * params.N};
}

double u_map_loworder(const ModelParams& params, int n) {
  if (n < 0) throw std::invalid_argument("u_map_loworder: n >= 0 required");
  return 1.0 + (n + 0.5) / (2.0 * params.N);
}

}  // namespace rho
