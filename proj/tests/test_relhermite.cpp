#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rho/relhermite.hpp"

using namespace rho;

TEST_CASE("standard Hermite table") {
  CHECK(hermite_std(0).coeff(0) == 1.0);
  CHECK(hermite_std(1).coeff(1) == 2.0);
  const Poly h2 = hermite_std(2);
  CHECK(h2.coeff(2) == 4.0);
  CHECK(h2.coeff(0) == -2.0);
  const Poly h3 = hermite_std(3);
  CHECK(h3.coeff(3) == 8.0);
  CHECK(h3.coeff(1) == -12.0);
  // H_10(1) = 8224 from the recurrence-independent closed table.
  CHECK(hermite_std(10)(1.0) == doctest::Approx(8224.0).epsilon(1e-13));
}

TEST_CASE("relativistic Hermite low orders") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  CHECK(relhermite(p, 0).poly.coeff(0) == 1.0);

  const Poly h1 = relhermite(p, 1).poly;
  CHECK(h1.degree() == 1);
  CHECK(h1.coeff(1) == doctest::Approx((2.0 * p.Nlambda + 1.0) / p.N).epsilon(1e-15));

  // n=2 coefficient ratio approaches the standard -1/2 as N grows.
  const ModelParams big = ModelParams::from_n_lambda(1e6, 0.0);
  const Poly h2 = relhermite(big, 2).poly;
  CHECK(h2.coeff(0) / h2.coeff(2) == doctest::Approx(-0.5).epsilon(1e-5));
}

TEST_CASE("termination and parity") {
  for (double lam : {0.0, 1.0}) {
    const ModelParams p = ModelParams::from_n_lambda(7.0, lam);
    for (int n = 0; n <= 12; ++n) {
      const Poly h = relhermite(p, n).poly;
      CHECK(h.degree() == n);
      for (int k = 0; k <= n; ++k) {
        if ((n - k) % 2 != 0) CHECK(h.coeff(k) == 0.0);
      }
      // The recurrence factor (k - n) kills a_{n+2} identically.
      const double a_np2 = -(double(n) - n) * (n - 2.0 * p.Nlambda - n) * h.coeff(n) /
                           (p.N * (n + 2.0) * (n + 1.0));
      CHECK(a_np2 == 0.0);
    }
  }
}

TEST_CASE("ODE residual certifies the construction") {
  CHECK(relhermite_ode_residual(ModelParams::from_n_lambda(1.0, 0.0), 0) == 0.0);
  CHECK(relhermite_ode_residual(ModelParams::from_n_lambda(5.0, 0.0), 7) <= 1e-10);
  CHECK(relhermite_ode_residual(ModelParams::from_n_lambda(10.0, 1.0), 4) <= 1e-10);

  for (double n_val : {1.0, 5.0, 10.0, 100.0}) {
    for (double lam : {0.0, 1.0, 1.0 / n_val}) {
      const ModelParams p = ModelParams::from_n_lambda(n_val, lam);
      for (int n = 0; n <= 12; ++n) {
        CAPTURE(n_val);
        CAPTURE(lam);
        CAPTURE(n);
        CHECK(relhermite_ode_residual(p, n) <= 1e-10);
      }
    }
  }
}

namespace {

double sup_diff_to_standard(double n_big, double lambda, int n) {
  const ModelParams p = ModelParams::from_n_lambda(n_big, lambda);
  const Poly rel = relhermite(p, n).poly;
  const Poly std_h = hermite_std(n);
  double sup = 0.0;
  for (int i = 0; i <= 160; ++i) {
    const double xi = -4.0 + 8.0 * i / 160.0;
    sup = std::max(sup, std::abs(rel(xi) - std_h(xi)));
  }
  return sup;
}

}  // namespace

TEST_CASE("convergence to standard Hermite is O(1/N)") {
  for (double lam : {0.0, 1.0}) {
    for (int n = 1; n <= 6; ++n) {
      const double coarse = sup_diff_to_standard(20.0, lam, n);
      const double fine = sup_diff_to_standard(40.0, lam, n);
      CAPTURE(lam);
      CAPTURE(n);
      if (fine < 1e-13) {
        // lambda = 1, n = 1: (2 N_lambda + 1)/N = 2 exactly, the polynomial
        // is already the standard one.
        CHECK(coarse < 1e-13);
        continue;
      }
      CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.15));
    }
  }
}

TEST_CASE("derivative lowers the degree with the ladder factor") {
  // d/dxi H_n = (n (2 N_lambda + n) / N) H_{n-1}; this is the identity that
  // ties the chosen leading coefficient to the ladder amplitudes.
  const ModelParams p = ModelParams::from_n_lambda(3.0, 0.5);
  for (int n = 1; n <= 8; ++n) {
    const Poly lhs = relhermite(p, n).poly.derivative();
    const Poly rhs = (n * (2.0 * p.Nlambda + n) / p.N) * relhermite(p, n - 1).poly;
    CHECK((lhs - rhs).max_abs_coeff() <= 1e-12 * rhs.max_abs_coeff());
  }
}
