#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "tempvar/error.hpp"
#include "tempvar/specfun.hpp"

using namespace tempvar;

TEST_CASE("incomplete gamma: closed forms") {
  CHECK(lower_incomplete_gamma(0.7, 0.0) == 0.0);
  CHECK(lower_incomplete_gamma(1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
  const double v = lower_incomplete_gamma(0.5, 1.0);
  CHECK(v >= 2.0 * std::exp(-1.0));
  CHECK(v <= 2.0);
  // gamma(1/2, x) = sqrt(pi) erf(sqrt(x))
  CHECK(lower_incomplete_gamma(0.5, 3.0) == doctest::Approx(std::sqrt(std::numbers::pi) * std::erf(std::sqrt(3.0))).epsilon(1e-13));
}

TEST_CASE("incomplete gamma agrees with boost on a grid of points") {
  double worst = 0.0;
  for (double a : {0.05, 0.25, 0.5, 0.75, 1.0, 1.5, 2.25, 3.0})
    for (double x : {1e-6, 0.01, 0.3, 1.0, 1.7, 2.5, 4.0, 10.0, 30.0, 50.0}) {
      const double ref = boost::math::tgamma_lower(a, x);
      worst = std::max(worst, std::abs(lower_incomplete_gamma(a, x) - ref) / ref);
    }
  CHECK(worst <= 1e-12);
}

TEST_CASE("incomplete gamma tends to the complete gamma function") {
  for (double a = 0.1; a <= 3.0; a += 0.1) CHECK(std::abs(lower_incomplete_gamma(a, 50.0) / gamma_fn(a) - 1.0) <= 1e-8);
}

TEST_CASE("incomplete gamma rejects bad input") {
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(1.0, -0.5), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(NAN, 1.0), DomainError);
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
}

TEST_CASE("gamma values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(reciprocal_gamma(0.0) == 0.0);
  CHECK(reciprocal_gamma(-2.0) == 0.0);
  CHECK(reciprocal_gamma(0.25) == doctest::Approx(1.0 / std::tgamma(0.25)));
}

TEST_CASE("kernel mass and its sigma -> 0 branch") {
  // sigma^-a gamma(a, sigma L)/Gamma(a) -> L^a / Gamma(a + 1)
  const double lim = std::pow(2.0, 0.6) / std::tgamma(1.6);
  CHECK(tempered_kernel_mass(0.6, 0.0, 2.0) == doctest::Approx(lim).epsilon(1e-14));
  CHECK(tempered_kernel_mass(0.6, 1e-6, 2.0) == doctest::Approx(lim).epsilon(1e-5));
  CHECK(tempered_kernel_mass(0.6, 1.0, 2.0) == doctest::Approx(boost::math::tgamma_lower(0.6, 2.0) / std::tgamma(0.6)).epsilon(1e-12));
}
