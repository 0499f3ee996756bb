#include "rho/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <vector>

#include "rho/algebra.hpp"
#include "rho/exact.hpp"
#include "rho/parallel.hpp"
#include "rho/perturb.hpp"
#include "rho/relhermite.hpp"

namespace rho {

namespace {

constexpr Provenance kPaper = Provenance::Paper;
constexpr Provenance kDerived = Provenance::Derived;
constexpr Provenance kTrivial = Provenance::Trivial;

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

std::string param_tag(const ModelParams& p) {
  return "N=" + fmt("%g", p.N) + ",lambda=" + fmt("%g", p.lambda);
}

double grid_sup(const std::function<double(double)>& f, double lo = -4.0, double hi = 4.0,
                int points = 321) {
  double sup = 0.0;
  for (int i = 0; i < points; ++i) {
    const double xi = lo + (hi - lo) * i / (points - 1);
    sup = std::max(sup, std::abs(f(xi)));
  }
  return sup;
}

double state_vs_oscillator_sup(const ModelParams& p, int n) {
  const ExactState st = exact_state(p, n);
  const GaussPoly phi = oscillator_function(n);
  return grid_sup([&](double xi) { return evaluate_x(st, xi) - gp_evaluate(phi, xi); });
}

double relhermite_vs_standard_sup(const ModelParams& p, int n) {
  const Poly rel = relhermite(p, n).poly;
  const Poly std_h = hermite_std(n);
  return grid_sup([&](double xi) { return rel(xi) - std_h(xi); });
}

// ---------------------------------------------------------------------------
// Randomized oracle-agreement cases (shared by the suite and criterion 11).

double rng_uniform(std::uint64_t& state, double lo, double hi) {
  state ^= state << 13;
  state ^= state >> 7;
  state ^= state << 17;
  const double u = static_cast<double>(state >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int rng_int(std::uint64_t& state, int lo, int hi) {
  return lo + static_cast<int>(rng_uniform(state, 0.0, hi - lo + 1.0 - 1e-12));
}

// Positive even part keeps the relative comparison honest; the odd noise
// integrates to zero and exercises the oracle's parity handling.
Poly random_even_dominant_poly(std::uint64_t& state, int deg) {
  Eigen::VectorXd c(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    c[k] = (k % 2 == 0) ? rng_uniform(state, 0.1, 1.0) : rng_uniform(state, -0.3, 0.3);
  }
  return Poly(c);
}

double oracle_case_deviation(unsigned seed, int index) {
  std::uint64_t state = 0x9e3779b97f4a7c15ull * (index + 1) + seed;
  for (int warm = 0; warm < 3; ++warm) rng_uniform(state, 0.0, 1.0);

  const bool gaussian = (index % 5) >= 3;  // 40% Gaussian family
  if (gaussian) {
    const ModelParams p = ModelParams::from_n_lambda(rng_uniform(state, 1.0, 50.0), 0.0);
    const GaussPoly f{random_even_dominant_poly(state, rng_int(state, 0, 8))};
    const GaussPoly g{random_even_dominant_poly(state, rng_int(state, 0, 8))};
    const MeasureSpec mu = (index % 2 == 0)
                               ? MeasureSpec::gaussian_native()
                               : MeasureSpec::perturbed(rng_uniform(state, -1.0, 1.0));
    const double exact = integrate(f, g, mu, p);
    const double numeric = integrate_numeric(f, g, mu, p);
    return std::abs(exact - numeric) / std::abs(exact);
  }

  // N >= 7 keeps the integrability margin >= 1 even when the exponent is
  // capped at 4N with the maximal degree 16.
  const double n_val = rng_uniform(state, 7.0, 50.0);
  const ModelParams p = ModelParams::from_n_lambda(n_val, 0.0);
  const int deg_f = rng_int(state, 0, 8);
  const int deg_g = rng_int(state, 0, 8);
  const int deg = deg_f + deg_g;

  MeasureSpec mu = MeasureSpec::flat();
  double measure_s = 0.0, extra_deg = 0.0;
  const int kind = index % 3;
  if (kind == 1) {
    measure_s = rng_uniform(state, 0.0, 3.0);
    mu = MeasureSpec::power_weight(measure_s);
  } else if (kind == 2) {
    mu = MeasureSpec::perturbed(rng_uniform(state, -1.0, 1.0));
    extra_deg = 2.0;
  }
  // Split a total exponent with integrability margin >= 1, capped by 4N.
  const double s_min = deg + extra_deg + 2.0 + 1.0;
  const double s_total =
      std::min(4.0 * n_val, s_min + rng_uniform(state, 0.0, 20.0)) - measure_s;
  const double s_f = rng_uniform(state, 0.0, s_total);
  const WeightedPoly f{s_f, random_even_dominant_poly(state, deg_f)};
  const WeightedPoly g{s_total - s_f, random_even_dominant_poly(state, deg_g)};
  const double exact = integrate(f, g, mu, p);
  const double numeric = integrate_numeric(f, g, mu, p);
  return std::abs(exact - numeric) / std::abs(exact);
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckRecord> suite_spectrum(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  for (int n = 0; n <= nmax; ++n) {
    const EnergyPair e = energy_exact(p, n);
    out.push_back(diagnostic("spectrum/exact_total/n=" + std::to_string(n), e.total, kDerived));
    out.push_back(diagnostic("spectrum/exact_rest_subtracted/n=" + std::to_string(n),
                             e.rest_subtracted, kDerived));
    out.push_back(diagnostic("spectrum/perturbative/n=" + std::to_string(n),
                             energy_perturbative(p, n), kPaper));
  }
  for (int n = 0; n < std::min(nmax, 4); ++n) {
    out.push_back(check_within("spectrum/level_spacing/n=" + std::to_string(n),
                               energy_exact(p, n + 1).total - energy_exact(p, n).total, 1.0,
                               1e-12, kTrivial, "equal spacing in n"));
  }
  const double s1 = 1.0 - 4.0 * p.sigma;
  if (std::abs(s1) > 1e-9 && p.N >= 5.0) {
    const double diff = energy_exact(p, 0).rest_subtracted - energy_perturbative(p, 0);
    out.push_back(check_within("spectrum/reconciliation_third_order",
                               std::abs(diff) * 128.0 * std::pow(p.N, 3) / (s1 * s1), 1.0, 0.02,
                               kDerived, "|dE| ~ (1-4sigma)^2/(128 N^3)"));
  }
  return out;
}

std::vector<CheckRecord> suite_gram(const ModelParams& p, const MeasureSpec& mu, int nmax) {
  std::vector<CheckRecord> out;
  std::vector<ExactState> st;
  st.reserve(nmax + 1);
  for (int n = 0; n <= nmax; ++n) st.push_back(exact_state(p, n));

  double max_offdiag = 0.0, max_diag_dev = 0.0;
  for (int row = 0; row <= nmax; ++row)
    for (int col = 0; col <= nmax; ++col) {
      const double v = inner_x(st[row], st[col], mu);
      if (row == col) {
        max_diag_dev = std::max(max_diag_dev, std::abs(v - 1.0));
      } else {
        max_offdiag = std::max(max_offdiag, std::abs(v));
      }
    }

  if (mu.kind == MeasureSpec::Kind::PowerWeight && mu.s == 2.0) {
    out.push_back(check_within("gram/max_offdiag", max_offdiag, 0.0, 1e-10, kPaper,
                               "deformed product restores orthogonality"));
    out.push_back(check_within("gram/max_diag_dev", max_diag_dev, 0.0, 1e-10, kDerived));
    double worst_norm = 0.0;
    for (int n = 0; n <= nmax; ++n) {
      worst_norm = std::max(worst_norm, std::abs(st[n].norm_x / closed_form_norm_x(p, n) - 1.0));
    }
    out.push_back(check_within("gram/norm_closed_form_dev", worst_norm, 0.0, 1e-9, kDerived,
                               "closed-form constants vs moment engine"));
  } else if (mu.kind == MeasureSpec::Kind::Flat) {
    out.push_back(check_at_least("gram/max_offdiag", max_offdiag, 0.01 / p.N, kPaper,
                                 "flat measure loses orthogonality at O(1/N)"));
    out.push_back(diagnostic("gram/max_diag_dev", max_diag_dev, kDerived));
  } else {
    out.push_back(diagnostic("gram/max_offdiag", max_offdiag, kDerived));
    out.push_back(diagnostic("gram/max_diag_dev", max_diag_dev, kDerived));
  }
  return out;
}

std::vector<CheckRecord> suite_ode_residual(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  double worst = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const double r = relhermite_ode_residual(p, n);
    worst = std::max(worst, r);
    out.push_back(check_within("ode/residual/n=" + std::to_string(n), r, 0.0, 1e-10, kDerived));
  }
  out.push_back(diagnostic("ode/residual_max", worst, kDerived));
  return out;
}

std::vector<CheckRecord> suite_kg_residual(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  for (int n = 0; n <= nmax; ++n) {
    const KgResidual sub = kg_residual(p, n, RestMass::Subtracted);
    const KgResidual res = kg_residual(p, n, RestMass::Restored);
    out.push_back(check_within("kg/subtracted/n=" + std::to_string(n), sub.relative, 0.0, 1e-10,
                               kDerived));
    out.push_back(check_within("kg/restored/n=" + std::to_string(n), res.relative, 0.0, 1e-10,
                               kDerived));
    out.push_back(check_within("kg/forms_agree/n=" + std::to_string(n),
                               std::abs(sub.relative - res.relative), 0.0, 1e-12, kDerived,
                               "same operator up to the rest-mass phase"));
  }
  out.push_back(check_at_least("kg/wrong_energy_probe",
                               kg_residual(p, 0, RestMass::Subtracted, 0.1).relative, 1e-3,
                               kTrivial, "detector non-vacuity"));
  return out;
}

std::vector<CheckRecord> suite_ladder(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  for (int n = 0; n <= nmax; ++n) {
    out.push_back(diagnostic("ladder/coeff_Z/n=" + std::to_string(n),
                             ladder_coeff(p, LadderKind::Z, n).amplitude, kPaper));
    out.push_back(diagnostic("ladder/coeff_Zdag/n=" + std::to_string(n),
                             ladder_coeff(p, LadderKind::Zdag, n).amplitude, kPaper));
    out.push_back(diagnostic("ladder/coeff_Zp/n=" + std::to_string(n),
                             ladder_coeff(p, LadderKind::Zp, n).amplitude, kPaper));
    out.push_back(diagnostic("ladder/coeff_Zpdag/n=" + std::to_string(n),
                             ladder_coeff(p, LadderKind::Zpdag, n).amplitude, kPaper));
  }
  double worst_up = 0.0, worst_down = 0.0, worst_spurious = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const LadderDecomposition up = ladder_apply_differential(p, LadderKind::Zdag, n);
    worst_up = std::max(worst_up,
                        std::abs(up.amplitude - ladder_coeff(p, LadderKind::Zdag, n).amplitude));
    worst_spurious = std::max(worst_spurious, up.spurious_max);
    const LadderDecomposition down = ladder_apply_differential(p, LadderKind::Z, n);
    if (n == 0) {
      out.push_back(check_within("ladder/vacuum_annihilation",
                                 down.components.cwiseAbs().maxCoeff(), 0.0, 1e-12, kTrivial));
    } else {
      worst_down = std::max(
          worst_down, std::abs(down.amplitude - ladder_coeff(p, LadderKind::Z, n).amplitude));
      worst_spurious = std::max(worst_spurious, down.spurious_max);
    }
  }
  out.push_back(check_within("ladder/differential_raising_dev", worst_up, 0.0, 1e-9, kPaper,
                             "closed-form raising amplitudes"));
  out.push_back(check_within("ladder/differential_lowering_dev", worst_down, 0.0, 1e-9, kPaper,
                             "closed-form lowering amplitudes"));
  out.push_back(check_within("ladder/spurious_components", worst_spurious, 0.0, 1e-8, kDerived));

  double adjoint_dev = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    adjoint_dev = std::max(adjoint_dev,
                           std::abs(ladder_coeff(p, LadderKind::Z, n).amplitude -
                                    ladder_coeff(p, LadderKind::Zdag, n - 1).amplitude));
  }
  out.push_back(check_within("ladder/tx_adjointness", adjoint_dev, 0.0, 0.0, kPaper,
                             "mutually adjoint under the t-x product"));

  if (nmax >= 2) {
    const double down2 = ladder_apply_differential(p, LadderKind::Z, 2).amplitude;
    const double up1 = ladder_apply_differential(p, LadderKind::Zdag, 1).amplitude;
    const double number_eig = 2.0 * (2.0 * p.Nlambda + 2.0) / (2.0 * p.N);
    out.push_back(check_within("ladder/number_operator_n=2", down2 * up1, number_eig, 1e-9,
                               kDerived, "composition of the two ladder actions"));
  }

  double primed_defect = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    primed_defect = std::max(primed_defect,
                             std::abs(ladder_coeff(p, LadderKind::Zp, n).amplitude -
                                      ladder_coeff(p, LadderKind::Zpdag, n - 1).amplitude));
  }
  out.push_back(diagnostic("ladder/primed_adjointness_defect", primed_defect, kDerived,
                           "measured; O(1/N), not asserted to vanish"));
  return out;
}

std::vector<CheckRecord> suite_hermiticity(const ModelParams& p, int nmax,
                                           const MeasureSpec& mu) {
  std::vector<CheckRecord> out;
  const PerturbedHamiltonian h = perturbed_hamiltonian(p);
  const HermiticityDefect d = hermiticity_defect(h, nmax, mu);
  out.push_back(diagnostic("hermiticity/defect_norm", d.norm, kDerived));

  if (mu.kind == MeasureSpec::Kind::Flat) {
    double channel_dev = 0.0, off_channel = 0.0;
    for (int row = 0; row <= nmax; ++row)
      for (int col = 0; col <= nmax; ++col) {
        if (row == col + 2) {
          const double expected = -std::sqrt((col + 1.0) * (col + 2.0)) / p.N;
          channel_dev = std::max(channel_dev, std::abs(d.defect(row, col) - expected));
        } else if (col != row + 2) {
          off_channel = std::max(off_channel, std::abs(d.defect(row, col)));
        }
      }
    out.push_back(check_within("hermiticity/channel2_dev", channel_dev, 0.0, 1e-10, kDerived,
                               "defect -sqrt((n+1)(n+2))/N on (n+2, n)"));
    out.push_back(check_within("hermiticity/off_channel_max", off_channel, 0.0, 1e-11, kDerived,
                               "|m-n| = 4 entries symmetric"));
    const Eigen::MatrixXd d1 = first_order_defect_matrix(h, nmax, 0.0);
    double d1_off = 0.0;
    for (int r = 0; r <= nmax; ++r)
      for (int c = 0; c <= nmax; ++c)
        if (std::abs(r - c) != 2) d1_off = std::max(d1_off, std::abs(d1(r, c)));
    out.push_back(check_within("hermiticity/first_order_support", d1_off, 0.0, 1e-12, kDerived,
                               "order-1/N defect lives on |m-n| = 2"));
  } else if (mu.kind == MeasureSpec::Kind::Perturbed && mu.a == -1.0) {
    out.push_back(check_within("hermiticity/first_order_defect",
                               first_order_defect(h, nmax, -1.0), 0.0, 1e-10, kDerived,
                               "solved measure symmetrizes order 1/N"));
    const ModelParams p2 = ModelParams::from_n_sigma(2.0 * p.N, p.sigma);
    const HermiticityDefect d2 = hermiticity_defect(perturbed_hamiltonian(p2), nmax, mu);
    out.push_back(check_within("hermiticity/residual_scaling", d.norm / d2.norm, 4.0, 0.8,
                               kDerived, "remaining defect is O(1/N^2)"));
  }
  return out;
}

std::vector<CheckRecord> suite_measure_solve(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  const PerturbedHamiltonian h = perturbed_hamiltonian(p);
  const MeasureSolve sol = solve_perturbed_measure(h, nmax);
  out.push_back(check_within("measure_solve/a", sol.a, -1.0, 1e-8, kPaper,
                             "perturbed measure 1 - omega^2 x^2/c^2"));
  out.push_back(check_within("measure_solve/residual", sol.residual, 0.0, 1e-10, kDerived));
  out.push_back(check_within("measure_solve/defect_with_a", first_order_defect(h, nmax, sol.a),
                             0.0, 1e-10, kDerived));
  return out;
}

std::vector<CheckRecord> suite_pt_compare(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  const PerturbedHamiltonian h = perturbed_hamiltonian(p);
  const double expected_shift = (1.0 - 4.0 * p.sigma) / (8.0 * p.N);

  double shift_dev = 0.0;
  for (int n = 0; n + 4 <= nmax && n <= 8; ++n) {
    shift_dev = std::max(shift_dev, std::abs(rs_first_order(h, nmax, n).shift - expected_shift));
  }
  out.push_back(check_within("pt/rs_shift_dev", shift_dev, 0.0, 1e-10, kPaper,
                             "(1-4sigma)/(8N), n-independent"));

  double mixing_dev = 0.0;
  for (int n = 0; n <= std::min(6, nmax - 4); ++n) {
    const RsFirstOrder rs = rs_first_order(h, nmax, n);
    const PerturbativeState st = perturbative_state(p, n, true);
    for (int k = 0; k <= nmax; ++k) {
      if (k == n) continue;
      const double closed = k < st.basis_coeffs.size() ? st.basis_coeffs[k] : 0.0;
      mixing_dev = std::max(mixing_dev, std::abs(rs.mixing[k] - closed));
    }
  }
  out.push_back(check_within("pt/rs_mixing_vs_closed_form", mixing_dev, 0.0, 1e-9, kPaper,
                             "first-order eigenvectors match the closed-form states"));

  const ModelParams p2 = ModelParams::from_n_sigma(2.0 * p.N, p.sigma);
  for (int n = 0; n <= std::min(5, nmax - 4); ++n) {
    const double ratio =
        compare_exact_vs_perturbative(p, n).sup / compare_exact_vs_perturbative(p2, n).sup;
    out.push_back(check_within("pt/supnorm_ratio/n=" + std::to_string(n), ratio, 4.0, 1.0,
                               kDerived, "exact vs perturbative differ at O(1/N^2)"));
  }

  const double d1 = std::abs(u_map_loworder(p, 1) - u_map_factor(p, 1));
  const double d2 = std::abs(u_map_loworder(p2, 1) - u_map_factor(p2, 1));
  out.push_back(check_within("pt/u_map_defect_ratio", d1 / d2, 4.0, 1.0, kDerived,
                             "low-order map factor misses at O(1/N^2)"));
  out.push_back(diagnostic("pt/u_map_loworder/n=1", u_map_loworder(p, 1), kPaper));
  return out;
}

std::vector<CheckRecord> suite_limit_scan(const ModelParams& p, int nmax, int doublings) {
  std::vector<CheckRecord> out;
  const int nstates = std::min(nmax, 6);
  std::vector<double> sup_state(doublings + 1, 0.0), sup_poly(doublings + 1, 0.0);
  for (int step = 0; step <= doublings; ++step) {
    const double n_val = p.N * std::exp2(step);
    const ModelParams q = ModelParams::from_n_lambda(n_val, p.lambda);
    for (int n = 0; n <= nstates; ++n) {
      sup_state[step] = std::max(sup_state[step], state_vs_oscillator_sup(q, n));
      sup_poly[step] = std::max(sup_poly[step], relhermite_vs_standard_sup(q, n));
    }
    out.push_back(diagnostic("limit/state_sup/N=" + fmt("%g", n_val), sup_state[step], kDerived));
    out.push_back(diagnostic("limit/poly_sup/N=" + fmt("%g", n_val), sup_poly[step], kDerived));
    if (step > 0) {
      const std::string tag = "N=" + fmt("%g", p.N * std::exp2(step - 1));
      out.push_back(check_within("limit/state_ratio/" + tag,
                                 sup_state[step - 1] / sup_state[step], 2.0, 0.3, kDerived,
                                 "states approach the oscillator at O(1/N)"));
      if (sup_poly[step] > 1e-13) {
        out.push_back(check_within("limit/poly_ratio/" + tag, sup_poly[step - 1] / sup_poly[step],
                                   2.0, 0.3, kDerived,
                                   "polynomials approach Hermite at O(1/N)"));
      }
    }
  }
  // lambda = 1 reference: the rest-subtracted ground energy sits at zero,
  // losing the oscillator vacuum energy.
  const ModelParams ref = ModelParams::from_n_lambda(p.N, 1.0);
  out.push_back(check_within("limit/lambda1_ground_energy",
                             energy_exact(ref, 0).rest_subtracted, 0.0, 1e-12, kPaper));
  out.push_back(diagnostic("limit/lambda1_vacuum_deviation",
                           std::abs(energy_exact(ref, 0).rest_subtracted - 0.5), kPaper,
                           "order-one miss of the oscillator ground energy at lambda = 1"));
  return out;
}

std::vector<CheckRecord> suite_commutators(const ModelParams& p, int nmax) {
  std::vector<CheckRecord> out;
  // Off-band structure of the position operator: the |m-n| = 3 channel is
  // O(1/N), the reason products with it carry no truncation-exact interior.
  const OperatorMatrix x = build_operator(OperatorKind::Position, BasisTag::ExactMinimal,
                                          MeasureSpec::power_weight(2.0), nmax, p);
  double band3 = 0.0;
  for (int row = 0; row <= nmax; ++row)
    for (int col = 0; col <= nmax; ++col)
      if (std::abs(row - col) == 3) band3 = std::max(band3, std::abs(x.entries(row, col)));
  out.push_back(diagnostic("commutators/position_band3_max", band3, kDerived,
                           "odd-channel tail of the position matrix"));
  const CommutatorReport r1 = commutator_check(nmax, p);
  const CommutatorReport r2 =
      commutator_check(nmax, ModelParams::from_n_lambda(2.0 * p.N, p.lambda));
  out.push_back(diagnostic("commutators/energy_momentum_residual", r1.r_energy_momentum,
                           kDerived, "[E,p] - i x on the interior block"));
  out.push_back(diagnostic("commutators/position_momentum_residual", r1.r_position_momentum,
                           kDerived, "[x,p] - i(1 + E/N)"));
  out.push_back(diagnostic("commutators/canonical_residual", r1.r_canonical, kDerived,
                           "[x,p] - i"));
  const auto scaling = [](double a, double b) {
    return (a > 0 && b > 0) ? std::log2(a / b) : 0.0;
  };
  out.push_back(diagnostic("commutators/energy_momentum_scaling",
                           scaling(r1.r_energy_momentum, r2.r_energy_momentum), kDerived,
                           "log2 residual drop when N doubles"));
  out.push_back(diagnostic("commutators/position_momentum_scaling",
                           scaling(r1.r_position_momentum, r2.r_position_momentum), kDerived,
                           "log2 residual drop when N doubles"));
  out.push_back(diagnostic("commutators/canonical_scaling",
                           scaling(r1.r_canonical, r2.r_canonical), kDerived,
                           "log2 residual drop when N doubles"));
  return out;
}

std::vector<CheckRecord> suite_oracle_agreement(unsigned seed, int count, int threads) {
  std::vector<double> deviations(count, 0.0);
  parallel_for(count, threads, [&](int i) { deviations[i] = oracle_case_deviation(seed, i); });
  double worst = 0.0;
  for (double d : deviations) worst = std::max(worst, d);
  std::vector<CheckRecord> out;
  out.push_back(check_within("oracle/max_rel_deviation", worst, 0.0, 1e-9, kDerived,
                             std::to_string(count) + " randomized integrands"));
  out.push_back(diagnostic("oracle/cases", count, kDerived));
  return out;
}

// ---------------------------------------------------------------------------
// Acceptance criteria, parameter sweeps and tolerances pinned.

namespace {

CriterionResult finish(int index, std::string title, std::vector<CheckRecord> records) {
  CriterionResult c;
  c.index = index;
  c.title = std::move(title);
  c.records = std::move(records);
  c.pass = true;
  for (const CheckRecord& r : c.records)
    if (!r.diagnostic && !r.pass) c.pass = false;
  return c;
}

std::vector<ModelParams> criterion_param_grid() {
  std::vector<ModelParams> grid;
  for (double n_val : {1.0, 5.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0, 1.0 / n_val}) {
      const bool dup = lam == 1.0 && n_val == 1.0 &&
                       grid.back().lambda == 1.0 && grid.back().N == 1.0;
      if (!dup) grid.push_back(ModelParams::from_n_lambda(n_val, lam));
    }
  }
  return grid;
}

CriterionResult criterion_ode() {
  std::vector<CheckRecord> rec;
  for (const ModelParams& p : criterion_param_grid()) {
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n) worst = std::max(worst, relhermite_ode_residual(p, n));
    rec.push_back(check_within("c01/ode_residual/" + param_tag(p), worst, 0.0, 1e-10, kDerived,
                               "n <= 12"));
  }
  return finish(1, "ODE certification of the relativistic Hermite construction", std::move(rec));
}

CriterionResult criterion_kg() {
  std::vector<CheckRecord> rec;
  for (const ModelParams& p : criterion_param_grid()) {
    double worst_sub = 0.0, worst_res = 0.0;
    for (int n = 0; n <= 10; ++n) {
      worst_sub = std::max(worst_sub, kg_residual(p, n, RestMass::Subtracted).relative);
      worst_res = std::max(worst_res, kg_residual(p, n, RestMass::Restored).relative);
    }
    rec.push_back(check_within("c02/kg_subtracted/" + param_tag(p), worst_sub, 0.0, 1e-10,
                               kDerived, "n <= 10"));
    rec.push_back(check_within("c02/kg_restored/" + param_tag(p), worst_res, 0.0, 1e-10,
                               kDerived, "box + m^2c^2/hbar^2 + chi R form"));
  }
  const ModelParams probe = ModelParams::from_n_lambda(5.0, 0.0);
  rec.push_back(check_at_least("c02/wrong_energy_probe",
                               kg_residual(probe, 0, RestMass::Subtracted, 0.1).relative, 1e-3,
                               kTrivial, "detector non-vacuity"));
  return finish(2, "Klein-Gordon residual certification", std::move(rec));
}

CriterionResult criterion_orthonormality() {
  std::vector<CheckRecord> rec;
  for (double n_val : {1.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0}) {
      const ModelParams p = ModelParams::from_n_lambda(n_val, lam);
      std::vector<ExactState> st;
      for (int n = 0; n <= 10; ++n) st.push_back(exact_state(p, n));
      double gram_dev = 0.0;
      for (int row = 0; row <= 10; ++row)
        for (int col = 0; col <= 10; ++col) {
          const double expect = row == col ? 1.0 : 0.0;
          gram_dev = std::max(
              gram_dev,
              std::abs(inner_x(st[row], st[col], MeasureSpec::power_weight(2.0)) - expect));
        }
      rec.push_back(check_within("c03/gram_identity/" + param_tag(p), gram_dev, 0.0, 1e-10,
                                 kPaper, "n, m <= 10 under d(xi) alpha^{-2}"));
      double norm_dev = 0.0;
      for (int n = 0; n <= 10; ++n) {
        norm_dev = std::max(norm_dev, std::abs(st[n].norm_x / closed_form_norm_x(p, n) - 1.0));
      }
      rec.push_back(check_within("c03/closed_form_constants/" + param_tag(p), norm_dev, 0.0, 1e-9,
                                 kDerived, "closed form vs numerical norms"));
    }
  }
  return finish(3, "Orthonormality under the deformed measure", std::move(rec));
}

CriterionResult criterion_ladder() {
  std::vector<CheckRecord> rec;
  for (double n_val : {1.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0}) {
      const ModelParams p = ModelParams::from_n_lambda(n_val, lam);
      double worst = 0.0, spurious = 0.0;
      for (int n = 0; n <= 10; ++n) {
        const LadderDecomposition up = ladder_apply_differential(p, LadderKind::Zdag, n);
        worst = std::max(worst,
                         std::abs(up.amplitude - ladder_coeff(p, LadderKind::Zdag, n).amplitude));
        spurious = std::max(spurious, up.spurious_max);
        if (n > 0) {
          const LadderDecomposition down = ladder_apply_differential(p, LadderKind::Z, n);
          worst = std::max(
              worst, std::abs(down.amplitude - ladder_coeff(p, LadderKind::Z, n).amplitude));
          spurious = std::max(spurious, down.spurious_max);
        }
      }
      rec.push_back(check_within("c04/differential_amplitudes/" + param_tag(p), worst, 0.0, 1e-9,
                                 kPaper, "closed-form ladder coefficients, n <= 10"));
      rec.push_back(check_within("c04/single_component/" + param_tag(p), spurious, 0.0, 1e-8,
                                 kDerived));
      double adjoint_dev = 0.0;
      for (int n = 1; n <= 12; ++n) {
        adjoint_dev = std::max(adjoint_dev,
                               std::abs(ladder_coeff(p, LadderKind::Z, n).amplitude -
                                        ladder_coeff(p, LadderKind::Zdag, n - 1).amplitude));
      }
      rec.push_back(check_within("c04/tx_adjointness/" + param_tag(p), adjoint_dev, 0.0, 0.0,
                                 kPaper, "exact under the t-x product"));
    }
  }
  return finish(4, "Differential ladder certification", std::move(rec));
}

CriterionResult criterion_energy() {
  std::vector<CheckRecord> rec;
  for (double n_val : {10.0, 20.0, 40.0}) {
    const ModelParams p = ModelParams::from_n_sigma(n_val, 0.0);
    const double diff = std::abs(energy_exact(p, 0).rest_subtracted - energy_perturbative(p, 0));
    rec.push_back(check_within("c05/third_order_gap/N=" + fmt("%g", n_val),
                               diff * 128.0 * std::pow(n_val, 3), 1.0, 0.02, kDerived,
                               "|dE| = hbar omega/(128 N^3) within 2%"));
    rec.push_back(diagnostic("c05/gap_value/N=" + fmt("%g", n_val), diff, kDerived,
                             "~7.80e-6 hbar omega at N = 10"));
  }
  for (double sigma : {0.0, 0.25, 1.0}) {
    const ModelParams p = ModelParams::from_n_sigma(10.0, sigma);
    const PerturbedHamiltonian h = perturbed_hamiltonian(p);
    double worst = 0.0;
    for (int n = 0; n <= 8; ++n) {
      worst = std::max(
          worst, std::abs(rs_first_order(h, 12, n).shift - (1.0 - 4.0 * sigma) / (8.0 * p.N)));
    }
    rec.push_back(check_within("c05/rs_shift/sigma=" + fmt("%g", sigma), worst, 0.0, 1e-10,
                               kPaper, "(1-4sigma)/(8N), n-independent, n <= 8"));
  }
  return finish(5, "Energy reconciliation", std::move(rec));
}

CriterionResult criterion_nonhermiticity() {
  std::vector<CheckRecord> rec;
  const int nmax = 10;
  const ModelParams p = ModelParams::from_n_sigma(10.0, 0.0);
  const PerturbedHamiltonian h = perturbed_hamiltonian(p);
  const HermiticityDefect d = hermiticity_defect(h, nmax, MeasureSpec::flat());

  double channel_dev = 0.0, off_channel = 0.0;
  for (int row = 0; row <= nmax; ++row)
    for (int col = 0; col <= nmax; ++col) {
      if (row == col + 2) {
        channel_dev = std::max(channel_dev, std::abs(d.defect(row, col) +
                                                     std::sqrt((col + 1.0) * (col + 2.0)) / p.N));
      } else if (col != row + 2) {
        off_channel = std::max(off_channel, std::abs(d.defect(row, col)));
      }
    }
  rec.push_back(check_within("c06/channel2_values", channel_dev, 0.0, 1e-10, kDerived,
                             "-sqrt((n+1)(n+2))/N, i.e. -sqrt(2)/N at n=0"));
  rec.push_back(check_within("c06/other_channels", off_channel, 0.0, 1e-11, kDerived,
                             "|m-n| = 4 entries symmetric via moment engine"));
  const Eigen::MatrixXd d1 = first_order_defect_matrix(h, nmax, 0.0);
  double d1_off = 0.0;
  for (int r = 0; r <= nmax; ++r)
    for (int c = 0; c <= nmax; ++c)
      if (std::abs(r - c) != 2) d1_off = std::max(d1_off, std::abs(d1(r, c)));
  rec.push_back(check_within("c06/first_order_support", d1_off, 0.0, 1e-12, kDerived,
                             "order-1/N support on |m-n| = 2 only"));

  const ModelParams p2 = ModelParams::from_n_sigma(20.0, 0.0);
  const HermiticityDefect d2 =
      hermiticity_defect(perturbed_hamiltonian(p2), nmax, MeasureSpec::flat());
  rec.push_back(check_within("c06/n_scaling",
                             (p.N * d.defect - p2.N * d2.defect).cwiseAbs().maxCoeff(), 0.0, 1e-9,
                             kDerived, "N x defect stable under doubling"));
  return finish(6, "Non-Hermiticity of the flat-measure Hamiltonian", std::move(rec));
}

CriterionResult criterion_measure_recovery() {
  std::vector<CheckRecord> rec;
  for (double sigma : {0.0, 0.25, 1.0}) {
    const ModelParams p = ModelParams::from_n_sigma(10.0, sigma);
    const PerturbedHamiltonian h = perturbed_hamiltonian(p);
    for (int nmax : {6, 8, 12}) {
      const MeasureSolve sol = solve_perturbed_measure(h, nmax);
      const std::string tag = "sigma=" + fmt("%g", sigma) + ",nmax=" + std::to_string(nmax);
      rec.push_back(check_within("c07/a/" + tag, sol.a, -1.0, 1e-8, kPaper,
                                 "measure d(x)(1 - omega^2 x^2/c^2)"));
      rec.push_back(
          check_within("c07/system_residual/" + tag, sol.residual, 0.0, 1e-10, kDerived));
      rec.push_back(check_within("c07/defect_at_minus1/" + tag,
                                 first_order_defect(h, nmax, -1.0), 0.0, 1e-10, kDerived));
    }
  }
  const HermiticityDefect r10 =
      hermiticity_defect(perturbed_hamiltonian(ModelParams::from_n_sigma(10.0, 0.0)), 8,
                         MeasureSpec::perturbed(-1.0));
  const HermiticityDefect r20 =
      hermiticity_defect(perturbed_hamiltonian(ModelParams::from_n_sigma(20.0, 0.0)), 8,
                         MeasureSpec::perturbed(-1.0));
  rec.push_back(check_within("c07/residual_defect_scaling", r10.norm / r20.norm, 4.0, 0.8,
                             kDerived, "left-over defect is O(1/N^2)"));
  return finish(7, "Perturbed-measure recovery", std::move(rec));
}

CriterionResult criterion_wavefunctions() {
  std::vector<CheckRecord> rec;
  const ModelParams p = ModelParams::from_n_sigma(10.0, 0.0);
  const PerturbedHamiltonian h = perturbed_hamiltonian(p);
  double mixing_dev = 0.0;
  for (int n = 0; n <= 6; ++n) {
    const RsFirstOrder rs = rs_first_order(h, 12, n);
    const PerturbativeState st = perturbative_state(p, n, true);
    for (int k = 0; k <= 12; ++k) {
      if (k == n) continue;
      const double closed = k < st.basis_coeffs.size() ? st.basis_coeffs[k] : 0.0;
      mixing_dev = std::max(mixing_dev, std::abs(rs.mixing[k] - closed));
    }
  }
  rec.push_back(check_within("c08/rs_vs_closed_form_coefficients", mixing_dev, 0.0, 1e-9, kPaper,
                             "e.g. sqrt(2)/(4N) onto phi_2 at n=0; n <= 6"));

  const ModelParams p2 = ModelParams::from_n_sigma(20.0, 0.0);
  for (int n = 0; n <= 5; ++n) {
    const double ratio =
        compare_exact_vs_perturbative(p, n).sup / compare_exact_vs_perturbative(p2, n).sup;
    rec.push_back(check_within("c08/supnorm_scaling/n=" + std::to_string(n), ratio, 4.0, 1.0,
                               kDerived, "sup|Psi'_n - Phi_n| = O(1/N^2)"));
  }
  return finish(8, "Wavefunction reconciliation", std::move(rec));
}

CriterionResult criterion_umap() {
  std::vector<CheckRecord> rec;
  const ModelParams p10 = ModelParams::from_n_sigma(10.0, 0.0);
  const ModelParams p20 = ModelParams::from_n_sigma(20.0, 0.0);
  for (int n = 0; n <= 5; ++n) {
    const double d10 = std::abs(u_map_factor(p10, n) - u_map_loworder(p10, n));
    const double d20 = std::abs(u_map_factor(p20, n) - u_map_loworder(p20, n));
    rec.push_back(check_within("c09/u_map_gap_scaling/n=" + std::to_string(n), d10 / d20, 4.0,
                               1.0, kDerived, "sqrt(E_n/(hbar omega N_lambda)) vs 1+(n+1/2)/2N"));
  }
  return finish(9, "Unitary-map consistency", std::move(rec));
}

CriterionResult criterion_limits() {
  std::vector<CheckRecord> rec;
  for (double lam : {0.0, 1.0}) {
    for (int n = 0; n <= 6; ++n) {
      const ModelParams p20 = ModelParams::from_n_lambda(20.0, lam);
      const ModelParams p40 = ModelParams::from_n_lambda(40.0, lam);
      const std::string tag = "lambda=" + fmt("%g", lam) + ",n=" + std::to_string(n);
      const double s20 = state_vs_oscillator_sup(p20, n);
      const double s40 = state_vs_oscillator_sup(p40, n);
      rec.push_back(check_within("c10/state_sup_ratio/" + tag, s20 / s40, 2.0, 0.3, kDerived,
                                 "sup|Psi'_n - phi_n| = O(1/N)"));
      const double h20 = relhermite_vs_standard_sup(p20, n);
      const double h40 = relhermite_vs_standard_sup(p40, n);
      if (h40 < 1e-13) {
        // lambda = 1, n <= 1: the polynomial already equals the standard one.
        rec.push_back(check_within("c10/poly_sup_exact/" + tag, h20, 0.0, 1e-13, kTrivial));
      } else {
        rec.push_back(check_within("c10/poly_sup_ratio/" + tag, h20 / h40, 2.0, 0.3, kDerived,
                                   "sup|H_n^{(N,lambda)} - H_n| = O(1/N)"));
      }
    }
  }
  for (double n_val : {10.0, 1000.0}) {
    rec.push_back(
        check_within("c10/lambda1_ground_energy/N=" + fmt("%g", n_val),
                     energy_exact(ModelParams::from_n_lambda(n_val, 1.0), 0).rest_subtracted, 0.0,
                     1e-12, kPaper, "vacuum energy lost at lambda = 1"));
  }
  return finish(10, "Non-relativistic limit suite", std::move(rec));
}

CriterionResult criterion_oracle(unsigned seed, int threads) {
  std::vector<CheckRecord> rec = suite_oracle_agreement(seed, 100, threads);
  for (CheckRecord& r : rec) r.name = "c11/" + r.name;
  return finish(11, "Moment engine vs quadrature oracle", std::move(rec));
}

CriterionResult criterion_diagnostics() {
  std::vector<CheckRecord> rec;
  // Primed-ladder adjointness defect under the deformed measure with its
  // measured N-scaling; reported, the pair is not adjoint at finite N.
  std::vector<double> defects;
  for (double n_val : {10.0, 20.0, 40.0}) {
    const ModelParams p = ModelParams::from_n_lambda(n_val, 0.0);
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      worst = std::max(worst, std::abs(ladder_coeff(p, LadderKind::Zp, n).amplitude -
                                       ladder_coeff(p, LadderKind::Zpdag, n - 1).amplitude));
    }
    defects.push_back(worst);
    rec.push_back(diagnostic("c12/primed_defect/N=" + fmt("%g", n_val), worst, kDerived));
  }
  rec.push_back(diagnostic("c12/primed_defect_scaling", std::log2(defects[0] / defects[1]),
                           kDerived, "log2 drop when N doubles; ~1 means O(1/N)"));
  rec.push_back(check_within("c12/primed_defect_ratio", defects[0] / defects[1], 2.0, 0.6,
                             kDerived, "measured O(1/N) decay"));

  for (double n_val : {10.0, 20.0}) {
    const CommutatorReport r = commutator_check(12, ModelParams::from_n_lambda(n_val, 0.0));
    rec.push_back(diagnostic("c12/commutator_energy_momentum/N=" + fmt("%g", n_val),
                             r.r_energy_momentum, kDerived));
    rec.push_back(diagnostic("c12/commutator_position_momentum/N=" + fmt("%g", n_val),
                             r.r_position_momentum, kDerived));
    rec.push_back(
        diagnostic("c12/commutator_canonical/N=" + fmt("%g", n_val), r.r_canonical, kDerived));
  }
  const CommutatorReport osc = commutator_check(8, ModelParams::from_n_lambda(1e4, 0.0));
  rec.push_back(check_within("c12/oscillator_limit_canonical", osc.r_canonical, 0.0, 1e-3,
                             kTrivial, "[x,p] -> i within O(1/N) at N = 1e4"));
  return finish(12, "Reported diagnostics", std::move(rec));
}

}  // namespace

std::vector<CriterionResult> run_acceptance(unsigned seed, int threads) {
  std::vector<CriterionResult> out;
  out.push_back(criterion_ode());
  out.push_back(criterion_kg());
  out.push_back(criterion_orthonormality());
  out.push_back(criterion_ladder());
  out.push_back(criterion_energy());
  out.push_back(criterion_nonhermiticity());
  out.push_back(criterion_measure_recovery());
  out.push_back(criterion_wavefunctions());
  out.push_back(criterion_umap());
  out.push_back(criterion_limits());
  out.push_back(criterion_oracle(seed, threads));
  out.push_back(criterion_diagnostics());
  return out;
}

}  // namespace rho
