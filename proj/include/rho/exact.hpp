#pragma once

#include <Eigen/Dense>

#include "rho/measures.hpp"
#include "rho/model.hpp"
#include "rho/poly.hpp"

namespace rho {

// Energy eigenstate of the covariant / minimal representations. The x-part
// is alpha^(-c_n) H_n^{(N,lambda)}(xi) with c_n = 1/2 + N_lambda + n; the
// time factor e^{-i b_n omega t} (b_n = c_n) is tracked through b_n only.
//
// Both normalization constants drop the sqrt(omega/2pi) of the t-x
// forms: the t-integral over one period is taken with weight omega/2pi, so
// the time average contributes 1 and the constants live entirely in xi
// space.
struct ExactState {
  int n = 0;
  ModelParams params;
  double c_n = 0.0;
  double b_n = 0.0;
  WeightedPoly wp;       // s = c_n, P = H_n^{(N,lambda)}; constants not included
  double norm_x = 0.0;   // unit norm under d(xi) alpha^{-2}
  double norm_tx = 0.0;  // unit norm under the t-x product (flat d(xi) slice)
};

// Builds the state with numerically computed norms and cross-checks them
// against the closed forms to 1e-9 relative; a disagreement throws
// ConventionMismatch.
ExactState exact_state(const ModelParams& params, int n);

// Closed-form constants in xi units (time factor dropped).
double closed_form_norm_x(const ModelParams& params, int n);
double closed_form_norm_tx(const ModelParams& params, int n);

// t-x scalar product: the analytic one-period time integral kills n != m
// exactly; equal levels reduce to the flat xi integral with t-x constants.
double inner_tx(const ExactState& a, const ExactState& b);

// Gram entry of x-only normalized states under the given measure.
double inner_x(const ExactState& a, const ExactState& b, const MeasureSpec& measure);

// Matrix element of xi^xi_power between x-only normalized states.
double inner_x_moment(const ExactState& a, const ExactState& b, const MeasureSpec& measure,
                      int xi_power);

// Pointwise value of the x-only normalized state.
double evaluate_x(const ExactState& state, double xi);

enum class RestMass { Subtracted, Restored };

struct KgResidual {
  WeightedPoly residual;
  double relative;  // max |residual coeff| / max |assembled term coeff|
};

// Applies the Klein-Gordon-type operator to the state within the weighted
// family, with i hbar d/dt replaced by the state's energy. Subtracted uses
// the six-term rest-subtracted form on e^{-i(b_n - N) omega t}; Restored
// uses the d'Alembertian + m^2c^2/hbar^2 + chi R form on e^{-i b_n omega t}.
// b_offset shifts the time frequency (wrong-energy detector probes).
KgResidual kg_residual(const ModelParams& params, int n, RestMass form, double b_offset = 0.0);

enum class LadderKind { Z, Zdag, Zp, Zpdag };

struct LadderAction {
  double amplitude = 0.0;
  int target = -1;  // -1 when the state is annihilated
};

// Closed-form ladder amplitudes: Z lowers with sqrt(n (2N_l + n) / 2N), Zdag
// raises with sqrt((n+1)(2N_l + n + 1) / 2N); the primed kinds carry the
// corrected-operator square-root factors.
LadderAction ladder_coeff(const ModelParams& params, LadderKind kind, int n);

struct LadderDecomposition {
  Eigen::VectorXd components;  // coefficients over t-x normalized states
  int target = -1;             // dominant level, -1 for the annihilated case
  double amplitude = 0.0;      // component on the target
  double spurious_max = 0.0;   // largest off-target |component|
};

// Applies the differential Z / Zdag within the weighted family and
// decomposes the result over the exact-state family. This is the oracle
// certifying the H_n^{(N,lambda)} leading-coefficient convention.
LadderDecomposition ladder_apply_differential(const ModelParams& params, LadderKind kind, int n);

// Spectral factor of the unitary map between representations,
// sqrt(E_n / (hbar omega N_lambda)); the accompanying phase has frequency
// (E_n - mc^2)/hbar and is not represented numerically.
double u_map_factor(const ModelParams& params, int n);

}  // namespace rho
