#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rho/errors.hpp"
#include "rho/exact.hpp"
#include "rho/measures.hpp"
#include "rho/relhermite.hpp"

using namespace rho;

TEST_CASE("ground state norm against the Beta closed form") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const ExactState st = exact_state(p, 0);
  // int d(xi) alpha^{-2 c_0 - 2} = sqrt(N) B(1/2, N_lambda + 1).
  const double integral = std::sqrt(p.N) * std::exp(std::lgamma(0.5) +
                                                    std::lgamma(p.Nlambda + 1.0) -
                                                    std::lgamma(p.Nlambda + 1.5));
  CHECK(st.norm_x == doctest::Approx(1.0 / std::sqrt(integral)).epsilon(1e-12));
  CHECK(st.c_n == 0.5 + p.Nlambda);
  CHECK(st.b_n == st.c_n);

  // Closed forms agree with the numerics (also enforced by the constructor).
  for (int n = 0; n <= 10; ++n) {
    const ExactState s = exact_state(p, n);
    CHECK(std::abs(s.norm_x / closed_form_norm_x(p, n) - 1.0) <= 1e-9);
    CHECK(std::abs(s.norm_tx / closed_form_norm_tx(p, n) - 1.0) <= 1e-9);
  }
}

TEST_CASE("states are unit vectors under the deformed measure") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const ExactState st = exact_state(p, 3);
  CHECK(inner_x(st, st, MeasureSpec::power_weight(2.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-relativistic limit of the ground state") {
  const ModelParams p = ModelParams::from_n_lambda(1e5, 0.0);
  const ExactState st = exact_state(p, 0);
  const double pre = std::pow(M_PI, -0.25);
  for (double xi = -4.0; xi <= 4.0; xi += 0.5) {
    CHECK(std::abs(evaluate_x(st, xi) - pre * std::exp(-0.5 * xi * xi)) <= 1e-4);
  }
}

TEST_CASE("t-x product is orthonormal") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  std::vector<ExactState> st;
  for (int n = 0; n <= 3; ++n) st.push_back(exact_state(p, n));
  CHECK(inner_tx(st[2], st[2]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(inner_tx(st[0], st[2]) == 0.0);  // analytic time integral
  CHECK(inner_tx(st[1], st[3]) == 0.0);
}

TEST_CASE("x-only Gram: orthonormal under alpha^{-2}, not under flat") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  std::vector<ExactState> st;
  for (int n = 0; n <= 10; ++n) st.push_back(exact_state(p, n));

  const MeasureSpec alpha2 = MeasureSpec::power_weight(2.0);
  CHECK(inner_x(st[4], st[4], alpha2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(inner_x(st[0], st[2], alpha2)) <= 1e-10);
  for (int n = 0; n <= 10; ++n)
    for (int m = 0; m <= 10; ++m) {
      const double expect = (n == m) ? 1.0 : 0.0;
      CAPTURE(n);
      CAPTURE(m);
      CHECK(std::abs(inner_x(st[n], st[m], alpha2) - expect) <= 1e-10);
    }

  // Flat measure: same-parity neighbours overlap at O(1/N).
  const double off10 = std::abs(inner_x(st[0], st[2], MeasureSpec::flat()));
  CHECK(off10 > 1e-3);
  const ModelParams p2 = ModelParams::from_n_lambda(20.0, 0.0);
  const double off20 = std::abs(
      inner_x(exact_state(p2, 0), exact_state(p2, 2), MeasureSpec::flat()));
  CHECK(off10 / off20 == doctest::Approx(2.0).epsilon(0.30));
}

TEST_CASE("Klein-Gordon residual certificate") {
  const ModelParams p5 = ModelParams::from_n_lambda(5.0, 0.0);
  CHECK(kg_residual(p5, 0, RestMass::Subtracted).relative <= 1e-10);
  CHECK(kg_residual(ModelParams::from_n_lambda(5.0, 1.0), 4, RestMass::Subtracted).relative <=
        1e-10);

  for (double n_val : {1.0, 5.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0, 1.0 / n_val}) {
      const ModelParams p = ModelParams::from_n_lambda(n_val, lam);
      for (int n = 0; n <= 10; n += 2) {
        CAPTURE(n_val);
        CAPTURE(lam);
        CAPTURE(n);
        const KgResidual sub = kg_residual(p, n, RestMass::Subtracted);
        const KgResidual res = kg_residual(p, n, RestMass::Restored);
        CHECK(sub.relative <= 1e-10);
        CHECK(res.relative <= 1e-10);
        // Same operator up to the unimodular rest-mass phase.
        CHECK(std::abs(sub.relative - res.relative) <= 1e-12);
      }
    }
  }
}

TEST_CASE("Klein-Gordon detector fires on a wrong energy") {
  const ModelParams p = ModelParams::from_n_lambda(5.0, 0.0);
  CHECK(kg_residual(p, 0, RestMass::Subtracted, 0.1).relative > 1e-3);
  CHECK(kg_residual(p, 0, RestMass::Restored, 0.1).relative > 1e-3);
}

TEST_CASE("ladder coefficients") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);

  const LadderAction z0 = ladder_coeff(p, LadderKind::Z, 0);
  CHECK(z0.amplitude == 0.0);
  CHECK(z0.target == -1);

  const LadderAction z1 = ladder_coeff(p, LadderKind::Z, 1);
  CHECK(z1.amplitude == doctest::Approx(std::sqrt((2.0 * p.Nlambda + 1.0) / 20.0)).epsilon(1e-15));
  CHECK(z1.amplitude == doctest::Approx(1.0253045).epsilon(1e-6));
  CHECK(z1.target == 0);

  // Oscillator limit.
  const ModelParams big = ModelParams::from_n_lambda(1e8, 0.0);
  for (int n = 1; n <= 6; ++n) {
    CHECK(ladder_coeff(big, LadderKind::Z, n).amplitude ==
          doctest::Approx(std::sqrt(double(n))).epsilon(1e-7));
    CHECK(ladder_coeff(big, LadderKind::Zdag, n).amplitude ==
          doctest::Approx(std::sqrt(n + 1.0)).epsilon(1e-7));
  }

  // Primed corrections multiply by the correction square roots.
  const LadderAction zp = ladder_coeff(p, LadderKind::Zp, 2);
  CHECK(zp.amplitude == doctest::Approx(ladder_coeff(p, LadderKind::Z, 2).amplitude *
                                        std::sqrt((p.Nlambda + 1.5) / (p.Nlambda + 2.5)))
                            .epsilon(1e-15));
  const LadderAction zpd = ladder_coeff(p, LadderKind::Zpdag, 2);
  CHECK(zpd.amplitude == doctest::Approx(ladder_coeff(p, LadderKind::Zdag, 2).amplitude *
                                         std::sqrt((p.Nlambda + 3.5) / (p.Nlambda + 2.5)))
                             .epsilon(1e-15));
  CHECK(ladder_coeff(p, LadderKind::Zp, 0).amplitude == 0.0);
}

TEST_CASE("differential ladders reproduce the closed-form actions") {
  for (double n_val : {1.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0}) {
      const ModelParams p = ModelParams::from_n_lambda(n_val, lam);
      for (int n = 0; n <= 10; ++n) {
        CAPTURE(n_val);
        CAPTURE(lam);
        CAPTURE(n);
        const LadderDecomposition up = ladder_apply_differential(p, LadderKind::Zdag, n);
        CHECK(up.target == n + 1);
        CHECK(std::abs(up.amplitude - ladder_coeff(p, LadderKind::Zdag, n).amplitude) <= 1e-9);
        CHECK(up.spurious_max <= 1e-10);

        const LadderDecomposition down = ladder_apply_differential(p, LadderKind::Z, n);
        if (n == 0) {
          CHECK(down.target == -1);
          CHECK(down.components.cwiseAbs().maxCoeff() <= 1e-12);
        } else {
          CHECK(down.target == n - 1);
          CHECK(std::abs(down.amplitude - ladder_coeff(p, LadderKind::Z, n).amplitude) <= 1e-9);
          CHECK(down.spurious_max <= 1e-10);
        }
      }
    }
  }
  CHECK_THROWS_AS(
      ladder_apply_differential(ModelParams::from_n_lambda(10.0, 0.0), LadderKind::Zp, 1),
      std::invalid_argument);
}

TEST_CASE("number operator from composed differential ladders") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const int n = 2;
  const double down = ladder_apply_differential(p, LadderKind::Z, n).amplitude;
  const double up = ladder_apply_differential(p, LadderKind::Zdag, n - 1).amplitude;
  const double eigenvalue = n * (2.0 * p.Nlambda + n) / (2.0 * p.N);
  CHECK(std::abs(down * up - eigenvalue) <= 1e-9);
}

TEST_CASE("t-x adjointness is exact, deformed-measure adjointness is O(1/N)") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  for (int n = 1; n <= 12; ++n) {
    // Matrix of Z has entry z_n at (n-1, n); its adjoint pairs with Zdag's
    // entry at (n, n-1). Identical expressions, bitwise equal.
    CHECK(ladder_coeff(p, LadderKind::Z, n).amplitude ==
          ladder_coeff(p, LadderKind::Zdag, n - 1).amplitude);
  }

  // Primed pair under the deformed measure: defect scales as 1/N.
  const auto primed_defect = [](double n_val) {
    const ModelParams q = ModelParams::from_n_lambda(n_val, 0.0);
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
      const double zp = ladder_coeff(q, LadderKind::Zp, n).amplitude;
      const double zpd = ladder_coeff(q, LadderKind::Zpdag, n - 1).amplitude;
      worst = std::max(worst, std::abs(zp - zpd));
    }
    return worst;
  };
  CHECK(primed_defect(10.0) / primed_defect(20.0) == doctest::Approx(2.0).epsilon(0.30));
}

TEST_CASE("unitary map factor") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const double u1 = u_map_factor(p, 1);
  CHECK(u1 == doctest::Approx(std::sqrt((1.5 + p.Nlambda) / p.Nlambda)).epsilon(1e-15));

  // Ratio of the two normalization constants equals the map factor.
  for (int n = 0; n <= 8; ++n) {
    CHECK(closed_form_norm_x(p, n) / closed_form_norm_tx(p, n) ==
          doctest::Approx(u_map_factor(p, n)).epsilon(1e-12));
  }

  // Low-order comparison: 1 + (n+1/2)/(2N) misses by O(1/N^2).
  const double gap10 = std::abs(u1 - 1.075);
  CHECK(gap10 == doctest::Approx(2.7e-3).epsilon(0.02));
  const ModelParams p20 = ModelParams::from_n_lambda(20.0, 0.0);
  const double gap20 = std::abs(u_map_factor(p20, 1) - (1.0 + 1.5 / 40.0));
  CHECK(gap10 / gap20 == doctest::Approx(4.0).epsilon(0.25));

  CHECK(u_map_factor(ModelParams::from_n_lambda(1e8, 0.0), 3) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pointwise limit of the minimal states") {
  const auto sup_diff = [](double n_val, int n) {
    const ModelParams p = ModelParams::from_n_lambda(n_val, 0.0);
    const ExactState st = exact_state(p, n);
    const GaussPoly phi = oscillator_function(n);
    double sup = 0.0;
    for (int i = 0; i <= 160; ++i) {
      const double xi = -4.0 + 8.0 * i / 160.0;
      sup = std::max(sup, std::abs(evaluate_x(st, xi) - gp_evaluate(phi, xi)));
    }
    return sup;
  };
  for (int n = 0; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(sup_diff(20.0, n) / sup_diff(40.0, n) == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_CASE("mismatched parameters are rejected") {
  const ExactState a = exact_state(ModelParams::from_n_lambda(10.0, 0.0), 0);
  const ExactState b = exact_state(ModelParams::from_n_lambda(12.0, 0.0), 0);
  CHECK_THROWS_AS(inner_tx(a, b), std::invalid_argument);
  CHECK_THROWS_AS(inner_x(a, b, MeasureSpec::flat()), std::invalid_argument);
}
