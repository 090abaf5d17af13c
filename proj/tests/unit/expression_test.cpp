#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tempvar/expression.hpp"

using namespace tempvar;

TEST_CASE("expressions evaluate with precedence and right-associative powers") {
  const auto e = Expression::parse("1 + 2*x^2^1 - -3/x", {"x"});
  CHECK(e({2.0}) == doctest::Approx(1 + 8 + 1.5));
  CHECK(Expression::parse("2^3^2", {})({}) == 512.0);
  CHECK(Expression::parse("-x^2", {"x"})({3.0}) == -9.0);
  CHECK(Expression::parse("exp(1) - e + sin(pi/2) + cos(0)", {})({}) == doctest::Approx(2.0));
}

TEST_CASE("symbolic derivatives agree with finite differences") {
  const auto L = Expression::parse("0.5*y^2 + x^3*sin(t) - exp(-2*x)*y + 2^x", {"x", "y", "t"});
  const auto Lx = L.derivative("x");
  const auto Ly = L.derivative("y");
  const double h = 1e-6;
  for (double x : {-1.3, 0.2, 2.0})
    for (double y : {-0.5, 1.5}) {
      const double t = 0.7;
      CHECK(Lx({x, y, t}) == doctest::Approx((L({x + h, y, t}) - L({x - h, y, t})) / (2 * h)).epsilon(1e-6));
      CHECK(Ly({x, y, t}) == doctest::Approx((L({x, y + h, t}) - L({x, y - h, t})) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expression::parse("1 +", {"x"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("z", {"x"}), ParseError);
  CHECK_THROWS_AS(Expression::parse("foo(1)", {}), ParseError);
  CHECK_THROWS_AS(Expression::parse("(1", {}), ParseError);
  CHECK_THROWS(static_cast<void>(Expression::parse("x^x", {"x"}).derivative("x")));
}
