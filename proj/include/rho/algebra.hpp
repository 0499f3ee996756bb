#pragma once

#include "rho/measures.hpp"
#include "rho/model.hpp"
#include "rho/operator_matrix.hpp"

namespace rho {

enum class OperatorKind {
  EnergyRestSubtracted,
  Position,
  LadderZ,
  LadderZdag,
  LadderZp,
  LadderZpdag,
  HamiltonianPerturbed,
};

// Assembles truncated operator matrices. Supported combinations:
//   EnergyRestSubtracted : ExactMinimal (diag b_n - N; measure ignored)
//   Position             : ExactMinimal + PowerWeight(2)  (moment engine)
//                          Oscillator (exact tridiagonal x in xi units)
//   LadderZ/Zdag         : ExactMinimal + Flat            (t-x coefficients)
//                          ExactMinimal + PowerWeight(2)  (re-expressed in the
//                          x-only orthonormal basis)
//   LadderZp/Zpdag       : ExactMinimal + PowerWeight(2)  (corrected operators)
//   HamiltonianPerturbed : Oscillator + Flat/Perturbed
OperatorMatrix build_operator(OperatorKind kind, BasisTag basis, const MeasureSpec& measure,
                              int nmax, const ModelParams& params);

// max |A - B^dagger| entrywise over the shared block.
double adjointness_defect(const OperatorMatrix& a, const OperatorMatrix& b);

// Residuals of the commutator algebra on the interior block [2, nmax-2],
// with p := i [E, x] (the first relation taken as the definition of p).
struct CommutatorReport {
  double r_energy_momentum = 0.0;  // max |[E,p] - i x|
  double r_position_momentum = 0.0;  // max |[x,p] - i (1 + E/N)|
  double r_canonical = 0.0;  // max |[x,p] - i|, the oscillator-limit probe
  int interior_lo = 0;
  int interior_hi = 0;
};

CommutatorReport commutator_check(int nmax, const ModelParams& params);

}  // namespace rho
