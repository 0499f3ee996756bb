#pragma once

#include <Eigen/Dense>

#include "rho/measures.hpp"

namespace rho {

enum class BasisTag { ExactMinimal, Oscillator };

// Truncated matrix of an operator in a declared basis and measure.
// `bandwidth` is the declared band (nmax + 1 marks a dense operator whose
// entries merely decay off the band); `interior` is the index range whose
// entries are unaffected by the truncation for this operator itself.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  BasisTag basis = BasisTag::Oscillator;
  MeasureSpec measure = MeasureSpec::flat();
  int nmax = 0;
  int bandwidth = 0;
  int interior_lo = 0;
  int interior_hi = 0;
};

}  // namespace rho
