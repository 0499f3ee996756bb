#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rho/errors.hpp"
#include "rho/measures.hpp"
#include "rho/model.hpp"

using namespace rho;

TEST_CASE("alpha moments: Beta identities") {
  const ModelParams p1 = ModelParams::from_n_lambda(1.0, 0.0);
  CHECK(alpha_moment(p1, 3.0, 0) == doctest::Approx(2.0).epsilon(1e-13));     // B(1/2, 1)
  CHECK(alpha_moment(p1, 2.0, 0) == doctest::Approx(M_PI).epsilon(1e-13));    // Cauchy integral
  CHECK_THROWS_AS(alpha_moment(p1, 2.0, 1), DivergentIntegral);
  CHECK_THROWS_AS(alpha_moment(p1, 1.0, 0), DivergentIntegral);

  // Scaling in N: moment = N^(k+1/2) B(k+1/2, s/2-k-1/2).
  const ModelParams p9 = ModelParams::from_n_lambda(9.0, 0.0);
  CHECK(alpha_moment(p9, 3.0, 0) == doctest::Approx(3.0 * 2.0).epsilon(1e-13));
}

TEST_CASE("log gamma ratio stays accurate at large arguments") {
  // Small-argument route agrees with direct lgamma.
  CHECK(log_gamma_ratio(2.5, 3.0) ==
        doctest::Approx(std::lgamma(5.5) - std::lgamma(2.5)).epsilon(1e-14));
  // Recurrence Gamma(x+1) = x Gamma(x) at large x, where naive lgamma
  // subtraction loses digits.
  for (double x : {1e6, 1e8, 1e10}) {
    CHECK(log_gamma_ratio(x, 1.0) == doctest::Approx(std::log(x)).epsilon(1e-13));
    const double sum = log_gamma_ratio(x, 0.5) + log_gamma_ratio(x + 0.5, 0.5);
    CHECK(sum == doctest::Approx(std::log(x)).epsilon(1e-13));
  }
}

TEST_CASE("moment engine: worked integrals") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const WeightedPoly one{0.0, Poly::constant(1.0)};

  // int (1 + xi^2/N)^{-(N_lambda + 3/2)} = sqrt(N) B(1/2, N_lambda + 1).
  const WeightedPoly w{2.0 * p.Nlambda + 3.0, Poly::constant(1.0)};
  const double expected = std::sqrt(p.N) *
                          std::exp(std::lgamma(0.5) + std::lgamma(p.Nlambda + 1.0) -
                                   std::lgamma(p.Nlambda + 1.5));
  CHECK(integrate(w, one, MeasureSpec::flat(), p) == doctest::Approx(expected).epsilon(1e-12));

  // Gaussian family: int e^{-xi^2} = sqrt(pi); odd integrand vanishes.
  const GaussPoly gone{Poly::constant(1.0)};
  const GaussPoly gx{Poly::monomial(1)};
  CHECK(integrate(gone, gone, MeasureSpec::gaussian_native(), p) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(integrate(gone, gx, MeasureSpec::gaussian_native(), p) == 0.0);

  // Odd monomials must be individually integrable even though they
  // contribute zero by parity.
  const WeightedPoly odd{2.5, Poly::monomial(3)};
  CHECK_THROWS_AS(integrate(odd, one, MeasureSpec::flat(), p), DivergentIntegral);
  CHECK_THROWS_AS(integrate_numeric(odd, one, MeasureSpec::flat(), p), DivergentIntegral);
  const WeightedPoly odd_ok{4.5, Poly::monomial(3)};
  CHECK(integrate(odd_ok, one, MeasureSpec::flat(), p) == 0.0);

  // Family/measure mismatches are configuration errors.
  CHECK_THROWS_AS(integrate(gone, gone, MeasureSpec::power_weight(2.0), p),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(one, one, MeasureSpec::gaussian_native(), p), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpec::power_weight(-1.0), std::invalid_argument);
}

TEST_CASE("quadrature oracle reproduces the worked integrals") {
  const ModelParams p = ModelParams::from_n_lambda(10.0, 0.0);
  const WeightedPoly one{0.0, Poly::constant(1.0)};
  const WeightedPoly w{2.0 * p.Nlambda + 3.0, Poly::constant(1.0)};
  CHECK(integrate_numeric(w, one, MeasureSpec::flat(), p) ==
        doctest::Approx(integrate(w, one, MeasureSpec::flat(), p)).epsilon(1e-10));

  const ModelParams p1 = ModelParams::from_n_lambda(1.0, 0.0);
  const WeightedPoly cauchy{2.0, Poly::constant(1.0)};
  CHECK(integrate_numeric(cauchy, one, MeasureSpec::flat(), p1) ==
        doctest::Approx(M_PI).epsilon(1e-10));

  const GaussPoly gone{Poly::constant(1.0)};
  const GaussPoly gx{Poly::monomial(1)};
  CHECK(integrate_numeric(gone, gone, MeasureSpec::gaussian_native(), p) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(std::abs(integrate_numeric(gone, gx, MeasureSpec::gaussian_native(), p)) <= 1e-12);
}

namespace {

// Random integrand with positive even part (keeps the relative comparison
// honest) and sign-mixed odd noise.
Poly random_integrand_poly(std::mt19937_64& rng, int deg) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(deg + 1);
  for (int k = 0; k <= deg; ++k) {
    c[k] = (k % 2 == 0) ? oracles::uniform(rng, 0.1, 1.0) : oracles::uniform(rng, -0.3, 0.3);
  }
  return Poly(c);
}

}  // namespace

TEST_CASE("moment engine vs quadrature oracle on random integrands") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const double n_val = oracles::uniform(rng, 5.0, 50.0);
    const ModelParams p = ModelParams::from_n_lambda(n_val, 0.0);
    const int deg_f = oracles::uniform_int(rng, 0, 8);
    const int deg_g = oracles::uniform_int(rng, 0, 8);
    const int deg = deg_f + deg_g;

    const int kind = oracles::uniform_int(rng, 0, 2);
    MeasureSpec measure = MeasureSpec::flat();
    double measure_s = 0.0, extra_deg = 0.0;
    if (kind == 1) {
      measure_s = oracles::uniform(rng, 0.0, 3.0);
      measure = MeasureSpec::power_weight(measure_s);
    } else if (kind == 2) {
      measure = MeasureSpec::perturbed(oracles::uniform(rng, -1.0, 1.0));
      extra_deg = 2.0;
    }

    // Split a total exponent with integrability margin >= 1 between f and g,
    // capped by 4N.
    const double s_min = deg + extra_deg + 2.0 + 1.0;
    const double s_total =
        std::min(4.0 * n_val, s_min + oracles::uniform(rng, 0.0, 20.0)) - measure_s;
    const double s_f = oracles::uniform(rng, 0.0, s_total);
    const WeightedPoly f{s_f, random_integrand_poly(rng, deg_f)};
    const WeightedPoly g{s_total - s_f, random_integrand_poly(rng, deg_g)};

    const double exact = integrate(f, g, measure, p);
    const double numeric = integrate_numeric(f, g, measure, p);
    CAPTURE(trial);
    CHECK(std::abs(exact - numeric) <= 1e-9 * std::abs(exact));
  }

  // Gaussian-family sweep, flat and perturbed measures.
  for (int trial = 0; trial < 20; ++trial) {
    const ModelParams p = ModelParams::from_n_lambda(oracles::uniform(rng, 1.0, 50.0), 0.0);
    const GaussPoly f{random_integrand_poly(rng, oracles::uniform_int(rng, 0, 8))};
    const GaussPoly g{random_integrand_poly(rng, oracles::uniform_int(rng, 0, 8))};
    const MeasureSpec measure = (trial % 2 == 0)
                                    ? MeasureSpec::gaussian_native()
                                    : MeasureSpec::perturbed(oracles::uniform(rng, -1.0, 1.0));
    const double exact = integrate(f, g, measure, p);
    const double numeric = integrate_numeric(f, g, measure, p);
    CAPTURE(trial);
    CHECK(std::abs(exact - numeric) <= 1e-9 * std::abs(exact));
  }
}

TEST_CASE("integrability margin of exact-state Gram integrals") {
  // (c_n + c_m)/2 + 1 - (n+m)/2 - 1/2 = N_lambda + 1 > 0 always.
  for (double n_val : {1.0, 2.5, 10.0}) {
    const ModelParams p = ModelParams::from_n_lambda(n_val, 0.0);
    for (int n = 0; n <= 20; n += 5) {
      for (int m = 0; m <= 20; m += 5) {
        const double c_n = 0.5 + p.Nlambda + n;
        const double c_m = 0.5 + p.Nlambda + m;
        const double margin = 0.5 * (c_n + c_m) + 1.0 - 0.5 * (n + m) - 0.5;
        CHECK(margin == doctest::Approx(p.Nlambda + 1.0).epsilon(1e-12));
        CHECK(margin > 0.0);
        // The moment engine's own guard accepts the top monomial.
        CHECK_NOTHROW(alpha_moment(p, c_n + c_m + 2.0, (n + m) / 2));
      }
    }
  }
}
