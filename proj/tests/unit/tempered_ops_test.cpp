#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "tempvar/error.hpp"
#include "tempvar/tempered_ops.hpp"

using namespace tempvar;

namespace {
const double pi = std::numbers::pi;

double max_gap(const GridFunction& u, const std::function<double(double)>& f, std::size_t from, std::size_t to) {
  double g = 0.0;
  for (std::size_t i = from; i <= to; ++i) g = std::max(g, std::abs(u[i] - f(u.node(i))));
  return g;
}
}  // namespace

TEST_CASE("integral of a constant matches the incomplete gamma closed form") {
  const TemperedParams p{0.75, 1.5, 0.0, 2.0};
  const std::size_t n = 512;
  const GridFunction one = GridFunction::sample(p, n, [](double) { return 1.0; });
  for (double order : {0.3, 0.75, 1.0}) {
    const auto left = left_tempered_integral(one, order);
    const auto right = right_tempered_integral(one, order);
    auto mass = [&](double len) {
      return len <= 0 ? 0.0 : boost::math::tgamma_lower(order, p.sigma * len) / (std::pow(p.sigma, order) * std::tgamma(order));
    };
    CHECK(left[0] == 0.0);
    CHECK(right[n] == 0.0);
    // e^{sigma t} is interpolated linearly, so constants carry an O(h^2) error.
    CHECK(max_gap(left, [&](double t) { return mass(t - p.a); }, 0, n) <= 1e-5);
    CHECK(max_gap(right, [&](double t) { return mass(p.b - t); }, 0, n) <= 1e-5);
    // Exact when e^{sigma t} u is constant.
    const auto e = GridFunction::sample(p, n, [&](double t) { return std::exp(-p.sigma * (t - p.a)); });
    CHECK(max_gap(left_tempered_integral(e, order),
                  [&](double t) { return std::exp(-p.sigma * (t - p.a)) * std::pow(t - p.a, order) / std::tgamma(order + 1); }, 0,
                  n) <= 1e-12);
  }
}

TEST_CASE("right integral is the mirror of the left one") {
  const TemperedParams p{0.6, 1.0, -1.0, 1.0};
  const GridFunction u = GridFunction::sample(p, 200, [](double t) { return std::cos(3 * t) + t * t; });
  const auto l = left_tempered_integral(reflect(u), 0.6);
  const auto r = reflect(right_tempered_integral(u, 0.6));
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(l[i] == doctest::Approx(r[i]).epsilon(1e-14));
}

TEST_CASE("Caputo derivative: exponential annihilation and a linear profile") {
  for (double alpha : {0.6, 0.75, 0.9})
    for (double sigma : {0.5, 1.0, 2.0}) {
      const TemperedParams p{alpha, sigma, 0.0, 1.0};
      const auto e = GridFunction::sample(p, 256, [&](double t) { return std::exp(-sigma * t); });
      CHECK(left_caputo_derivative(e).max_abs() <= 1e-12);
      const auto er = GridFunction::sample(p, 256, [&](double t) { return std::exp(-sigma * (1.0 - t)); });
      CHECK(right_caputo_derivative(er).max_abs() <= 1e-12);
      // e^{sigma t} u linear: the L1 scheme is exact.
      const auto lin = GridFunction::sample(p, 256, [&](double t) { return std::exp(-sigma * t) * t; });
      const auto d = left_caputo_derivative(lin);
      CHECK(max_gap(d, [&](double t) { return std::exp(-sigma * t) * std::pow(t, 1 - alpha) / std::tgamma(2 - alpha); }, 0, 256) <= 1e-12);
    }
}

TEST_CASE("Caputo power rule with sigma = 0") {
  const double alpha = 0.7;
  double prev = INFINITY;
  for (std::size_t n : {64, 128, 256}) {
    const TemperedParams p{alpha, 0.0, 0.0, 1.0};
    const auto u = GridFunction::sample(p, n, [](double t) { return t * t; });
    const double err = max_gap(left_caputo_derivative(u), [&](double t) { return 2 * std::pow(t, 2 - alpha) / std::tgamma(3 - alpha); }, 0, n);
    CHECK(err < prev);
    CHECK(err <= 5.0 * std::pow(1.0 / n, 2 - alpha));
    prev = err;
  }
  const TemperedParams p{alpha, 0.0, 0.0, 1.0};
  const auto c = GridFunction::sample(p, 50, [](double) { return 3.0; });
  CHECK(right_caputo_derivative(c).max_abs() <= 1e-14);
}

TEST_CASE("Riemann-Liouville derivative vs Caputo plus the boundary term") {
  const TemperedParams p{0.75, 1.0, 0.0, 1.0};
  const auto u0 = GridFunction::sample(p, 128, [](double t) { return std::sin(pi * t); });
  const auto rl = left_rl_derivative(u0);
  const auto cap = left_caputo_derivative(u0);
  CHECK_FALSE(rl.singular_node.has_value());
  for (std::size_t i = 0; i < u0.size(); ++i) CHECK(rl.value[i] == cap[i]);

  const auto e = GridFunction::sample(p, 128, [](double t) { return std::exp(-t); });
  const auto le = left_rl_derivative(e);
  REQUIRE(le.singular_node.has_value());
  CHECK(*le.singular_node == 0);
  CHECK(max_gap(le.value, [](double t) { return std::exp(-t) * std::pow(t, -0.75) / std::tgamma(0.25); }, 1, 128) <= 1e-12);

  const auto er = GridFunction::sample(p, 128, [](double t) { return std::exp(-(1 - t)); });
  const auto re = right_rl_derivative(er);
  REQUIRE(re.singular_node.has_value());
  CHECK(*re.singular_node == 128);
  CHECK(max_gap(re.value, [](double t) { return std::exp(-(1 - t)) * std::pow(1 - t, -0.75) / std::tgamma(0.25); }, 0, 127) <= 1e-12);

  const GridFunction z(p, 32);
  CHECK(left_rl_derivative(z).value.max_abs() == 0.0);
  CHECK(right_rl_derivative(z).value.max_abs() == 0.0);
}

TEST_CASE("operator matrices reproduce direct application bit for bit") {
  const TemperedParams p{0.8, 0.7, 0.0, 1.0};
  const std::size_t n = 64;
  const auto u = GridFunction::sample(p, n, [](double t) { return std::exp(t) - 0.3 * t * t + 0.5; });
  for (Side side : {Side::left, Side::right})
    for (Family fam : {Family::rl_integral, Family::rl_derivative, Family::caputo_derivative}) {
      const OperatorKind kind{side, fam, 0.4, ZeroOrder::reject};
      const OperatorMatrix m(kind, p, n);
      const auto direct = apply_operator(kind, u);
      const auto via = m.apply(u);
      for (std::size_t i = 0; i <= n; ++i) CHECK(direct[i] == via[i]);
      const auto& e = m.entries();
      double off = 0.0;
      for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
          if ((side == Side::left && j > i) || (side == Side::right && j < i)) off = std::max(off, std::abs(e(i, j)));
      CHECK(off == 0.0);
    }
  const OperatorMatrix rl({Side::left, Family::rl_derivative}, p, n);
  REQUIRE(rl.singular_rows().size() == 1);
  CHECK(rl.singular_rows()[0] == 0);
  CHECK(rl.entries().row(0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("order-zero integral convention") {
  const TemperedParams p0{0.5, 0.0, 0.0, 1.0};
  const auto u = GridFunction::sample(p0, 16, [](double t) { return 1 + t; });
  const auto id = left_tempered_integral(u, 0.0, ZeroOrder::identity);
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(id[i] == u[i]);
  CHECK_THROWS_AS(left_tempered_integral(u, 0.0), DomainError);
  const TemperedParams p1{0.5, 1.0, 0.0, 1.0};
  CHECK_THROWS_AS(right_tempered_integral(u.relabel(p1), 0.0, ZeroOrder::identity), DomainError);
}

TEST_CASE("composition identities converge at rate two") {
  const TemperedParams p{0.75, 1.0, 0.0, 1.0};
  double prev = 0.0;
  for (std::size_t n : {128, 256, 512}) {
    const auto u = GridFunction::sample(p, n, [](double t) { return std::sin(pi * t); });
    const double r = verify_composition(u).max();
    if (prev > 0.0) CHECK(prev / r >= std::sqrt(2.0));
    prev = r;
  }
  // Constants: only quadrature error in the reconstruction of c e^{-sigma(t-a)}.
  auto constant = [&](std::size_t n) {
    return verify_composition(GridFunction::sample(p, n, [](double) { return 2.0; })).left_integral_of_derivative;
  };
  CHECK(constant(128) / constant(512) >= 2.0);
  CHECK(constant(512) <= 2e-3);
  CHECK(verify_composition(GridFunction(p, 64)).max() == 0.0);
}

TEST_CASE("integration by parts, including the boundary term") {
  const TemperedParams p{0.7, 0.8, 0.0, 1.0};
  const auto u = GridFunction::sample(p, 512, [](double t) { return std::sin(pi * t); });
  const auto v = GridFunction::sample(p, 512, [](double t) { return t * t * (1 - t); });
  const auto r = verify_integration_by_parts(u, v);
  CHECK(r.derivative_relative <= 1e-3);
  CHECK(r.integral_relative <= 1e-3);
  // Nonzero boundary values: the identity only holds up to discretization error.
  // The singular node of D_{b-} v costs O(h^{1-alpha}).
  auto nonzero = [&](std::size_t n) {
    return verify_integration_by_parts(GridFunction::sample(p, n, [](double t) { return 1 + t; }),
                                       GridFunction::sample(p, n, [](double t) { return 2 - t * t; }))
        .derivative_relative;
  };
  CHECK(nonzero(4096) < nonzero(512));
  CHECK(nonzero(4096) <= 5e-2);
  CHECK(verify_integration_by_parts(GridFunction(p, 512), v).derivative_residual == 0.0);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(TemperedParams({1.5, 1.0, 0.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(TemperedParams({0.5, -1.0, 0.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(TemperedParams({0.5, 1.0, 1.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(TemperedParams({0.4, 1.0, 0.0, 1.0}).validate_embedding(), DomainError);
  const TemperedParams p{};
  CHECK_THROWS_AS(GridFunction(p, std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(GridFunction(p, std::vector<double>{1.0, NAN, 2.0}), NumericalError);
  CHECK_THROWS_AS(GridFunction(p, 4) + GridFunction(p, 8), GridMismatch);
}
