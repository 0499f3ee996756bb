#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rho/measures.hpp"
#include "rho/model.hpp"
#include "rho/operator_matrix.hpp"
#include "rho/poly.hpp"

namespace rho {

// One Hamiltonian term coeff(xi) * N^(-npow) * d^dorder/dxi^dorder, in
// units of hbar omega.
struct HamiltonianTerm {
  int dorder = 0;
  Poly coeff;
  int npow = 0;
};

// The O(1/N) Hamiltonian in dimensionless form,
//   -1/2 d^2 + 1/2 xi^2
//   + (1/N) [ -1/8 d^4 - 3/4 xi^2 d^2 - 1/2 xi d - 1/8 xi^4 + (1 - 2 sigma)/4 ],
// the N -> infinity truncation being the oscillator Hamiltonian.
struct PerturbedHamiltonian {
  ModelParams params;
  std::vector<HamiltonianTerm> terms;
};

PerturbedHamiltonian perturbed_hamiltonian(const ModelParams& params);

// Applies terms with npow <= through_npow. through_npow = 0 is the
// oscillator truncation. Exact within the Gaussian family and linear.
GaussPoly apply_hamiltonian(const PerturbedHamiltonian& h, const GaussPoly& f,
                            int through_npow = 1);

// M(m,n) = <phi_m | H phi_n> under the given measure via Gaussian moments.
Eigen::MatrixXd hamiltonian_matrix_dense(const PerturbedHamiltonian& h, int nmax,
                                         const MeasureSpec& measure);
OperatorMatrix hamiltonian_matrix(const PerturbedHamiltonian& h, int nmax,
                                  const MeasureSpec& measure);

struct HermiticityDefect {
  Eigen::MatrixXd defect;  // M - M^T
  double norm = 0.0;       // max abs entry
};
HermiticityDefect hermiticity_defect(const PerturbedHamiltonian& h, int nmax,
                                     const MeasureSpec& measure);

// Asymmetry of the order-1/N block W + a Q with the measure ansatz
// (1 + a xi^2/N): W(m,n) = <phi_m| N (H - H_osc) |phi_n>,
// Q(m,n) = (n + 1/2) <phi_m| xi^2 |phi_n>. Strictly first order: no 1/N^2
// cross terms enter.
Eigen::MatrixXd first_order_defect_matrix(const PerturbedHamiltonian& h, int nmax, double a);
double first_order_defect(const PerturbedHamiltonian& h, int nmax, double a);

struct MeasureSolve {
  double a = 0.0;        // solved ansatz coefficient
  double residual = 0.0; // max |row residual| of the least-squares system
};

// Determines a by imposing symmetry of the Hamiltonian matrix at order 1/N
// over all level pairs up to nmax (overdetermined; least squares). Throws
// InconsistentSystem when the residual exceeds 1e-8.
MeasureSolve solve_perturbed_measure(const PerturbedHamiltonian& h, int nmax);

struct PerturbativeState {
  int n = 0;
  ModelParams params;
  GaussPoly gp;
  Eigen::VectorXd basis_coeffs;  // index k -> coefficient on phi_k
};

// normalized = false: first-order eigenfunction (unit phi_n component).
// normalized = true: unit norm under the (1 - xi^2/N) measure to O(1/N^2),
// phi_n component 1 + (2n+1)/(4N).
PerturbativeState perturbative_state(const ModelParams& params, int n, bool normalized);

struct RsFirstOrder {
  double shift = 0.0;      // M(n,n) - (n + 1/2)
  Eigen::VectorXd mixing;  // c_m = M(m,n)/(n - m), c_n = 0
};

// Ordinary Rayleigh-Schrodinger first order on the flat-measure matrix.
RsFirstOrder rs_first_order(const PerturbedHamiltonian& h, int nmax, int n);

struct SupNormComparison {
  double sup = 0.0;           // sup over xi in [-4,4] of |Psi'_n - Phi_n|
  double sup_times_n2 = 0.0;  // sup * N^2
};
SupNormComparison compare_exact_vs_perturbative(const ModelParams& params, int n);

// Low-order expansion of the unitary-map factor: 1 + (n + 1/2)/(2N).
double u_map_loworder(const ModelParams& params, int n);

}  // namespace rho
