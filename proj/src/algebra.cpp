#include "rho/algebra.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rho/exact.hpp"
#include "rho/perturb.hpp"

namespace rho {

namespace {

using Complexd = std::complex<double>;

bool is_power_weight_2(const MeasureSpec& m) {
  return m.kind == MeasureSpec::Kind::PowerWeight && m.s == 2.0;
}

OperatorMatrix banded(Eigen::MatrixXcd entries, BasisTag basis, const MeasureSpec& measure,
                      int nmax, int bandwidth) {
  OperatorMatrix op;
  op.entries = std::move(entries);
  op.basis = basis;
  op.measure = measure;
  op.nmax = nmax;
  op.bandwidth = bandwidth;
  op.interior_lo = 0;
  op.interior_hi = nmax;
  return op;
}

}  // namespace

OperatorMatrix build_operator(OperatorKind kind, BasisTag basis, const MeasureSpec& measure,
                              int nmax, const ModelParams& params) {
  if (nmax < 0) throw std::invalid_argument("build_operator: nmax >= 0 required");
  const int dim = nmax + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);

  switch (kind) {
    case OperatorKind::EnergyRestSubtracted: {
      if (basis != BasisTag::ExactMinimal) {
        throw std::invalid_argument("build_operator: rest-subtracted energy lives in the exact basis");
      }
      for (int n = 0; n <= nmax; ++n) m(n, n) = energy_exact(params, n).rest_subtracted;
      return banded(std::move(m), basis, measure, nmax, 0);
    }

    case OperatorKind::Position: {
      if (basis == BasisTag::Oscillator) {
        for (int n = 0; n < nmax; ++n) {
          const double v = std::sqrt((n + 1.0) / 2.0);
          m(n, n + 1) = v;
          m(n + 1, n) = v;
        }
        return banded(std::move(m), basis, measure, nmax, 1);
      }
      if (!is_power_weight_2(measure)) {
        throw std::invalid_argument("build_operator: exact-basis position requires PowerWeight(2)");
      }
      std::vector<ExactState> states;
      states.reserve(dim);
      for (int n = 0; n <= nmax; ++n) states.push_back(exact_state(params, n));
      for (int row = 0; row <= nmax; ++row)
        for (int col = 0; col <= nmax; ++col) {
          if ((row + col) % 2 == 0) continue;  // parity
          m(row, col) = inner_x_moment(states[row], states[col], measure, 1);
        }
      // Dominant band +-1 with decaying odd-channel tails; declared dense.
      return banded(std::move(m), basis, measure, nmax, nmax + 1);
    }

    case OperatorKind::LadderZ:
    case OperatorKind::LadderZdag: {
      if (basis != BasisTag::ExactMinimal) {
        throw std::invalid_argument("build_operator: ladder matrices live in the exact basis");
      }
      const LadderKind lk = (kind == OperatorKind::LadderZ) ? LadderKind::Z : LadderKind::Zdag;
      const bool primed_basis = is_power_weight_2(measure);
      if (!primed_basis && measure.kind != MeasureSpec::Kind::Flat) {
        throw std::invalid_argument("build_operator: ladder measure must be Flat or PowerWeight(2)");
      }
      for (int n = 0; n <= nmax; ++n) {
        const LadderAction act = ladder_coeff(params, lk, n);
        if (act.target < 0 || act.target > nmax) continue;
        double amp = act.amplitude;
        if (primed_basis) {
          // Z Psi'_n = z_n u_n / u_{target} Psi'_{target}, u_n the unitary-map factor.
          amp *= u_map_factor(params, n) / u_map_factor(params, act.target);
        }
        m(act.target, n) = amp;
      }
      return banded(std::move(m), basis, measure, nmax, 1);
    }

    case OperatorKind::LadderZp:
    case OperatorKind::LadderZpdag: {
      if (basis != BasisTag::ExactMinimal || !is_power_weight_2(measure)) {
        throw std::invalid_argument("build_operator: corrected ladders require PowerWeight(2)");
      }
      const LadderKind lk = (kind == OperatorKind::LadderZp) ? LadderKind::Zp : LadderKind::Zpdag;
      for (int n = 0; n <= nmax; ++n) {
        const LadderAction act = ladder_coeff(params, lk, n);
        if (act.target < 0 || act.target > nmax) continue;
        m(act.target, n) = act.amplitude;
      }
      return banded(std::move(m), basis, measure, nmax, 1);
    }

    case OperatorKind::HamiltonianPerturbed: {
      if (basis != BasisTag::Oscillator) {
        throw std::invalid_argument("build_operator: perturbed Hamiltonian lives in the oscillator basis");
      }
      return hamiltonian_matrix(perturbed_hamiltonian(params), nmax, measure);
    }
  }
  throw std::invalid_argument("build_operator: unknown kind");
}

double adjointness_defect(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.nmax != b.nmax) throw std::invalid_argument("adjointness_defect: size mismatch");
  return (a.entries - b.entries.adjoint()).cwiseAbs().maxCoeff();
}

CommutatorReport commutator_check(int nmax, const ModelParams& params) {
  if (nmax < 8) throw std::invalid_argument("commutator_check: nmax >= 8 required");
  const MeasureSpec mu = MeasureSpec::power_weight(2.0);
  const Eigen::MatrixXcd x =
      build_operator(OperatorKind::Position, BasisTag::ExactMinimal, mu, nmax, params).entries;
  const Eigen::MatrixXcd e =
      build_operator(OperatorKind::EnergyRestSubtracted, BasisTag::ExactMinimal, mu, nmax, params)
          .entries;
  const int dim = nmax + 1;
  const Complexd iu(0.0, 1.0);

  // First relation as the definition: p := i [E, x].
  const Eigen::MatrixXcd p = iu * (e * x - x * e);
  const Eigen::MatrixXcd r_ep = (e * p - p * e) - iu * x;
  const Eigen::MatrixXcd xp = x * p - p * x;
  const Eigen::MatrixXcd r_alg =
      xp - iu * (Eigen::MatrixXcd::Identity(dim, dim) + e / params.N);
  const Eigen::MatrixXcd r_can = xp - iu * Eigen::MatrixXcd::Identity(dim, dim);

  CommutatorReport rep;
  rep.interior_lo = 2;
  rep.interior_hi = nmax - 2;
  const int len = rep.interior_hi - rep.interior_lo + 1;
  const auto interior = [&](const Eigen::MatrixXcd& r) {
    return r.block(rep.interior_lo, rep.interior_lo, len, len).cwiseAbs().maxCoeff();
  };
  rep.r_energy_momentum = interior(r_ep);
  rep.r_position_momentum = interior(r_alg);
  rep.r_canonical = interior(r_can);
  return rep;
}

}  // namespace rho
