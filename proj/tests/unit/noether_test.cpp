#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tempvar/bvp.hpp"
#include "tempvar/error.hpp"
#include "tempvar/noether.hpp"
#include "tempvar/variational.hpp"

using namespace tempvar;

namespace {
const TemperedParams kP{0.75, 1.0, 0.0, 1.0};
const double pi = std::numbers::pi;

SpaceElement manufactured_extremal(std::size_t n) {
  const auto f = forward_map(kP, [](double t) { return std::sin(pi * t); }, n, 0, false);
  const auto r = minimize_direct(forced_dirichlet(f), SpaceElement::zero(Space::create(kP, n)), 1e-9, 500);
  REQUIRE(r.converged);
  return r.extremal;
}
}  // namespace

TEST_CASE("symmetry construction checks identity and generator") {
  CHECK_NOTHROW(symmetry_catalog("scaling", kP));
  CHECK_THROWS_AS(SymmetrySpec("bad", [](double s, double x, double) { return x + s + 1; }, [](double, double) { return 1.0; }), DomainError);
  CHECK_THROWS_AS(SymmetrySpec("bad-eta", [](double s, double x, double) { return x + 2 * s; }, [](double, double) { return 1.0; }), DomainError);
  CHECK_NOTHROW(symmetry_from_expressions("x + s*exp(-t)", "exp(-t)", kP));
  CHECK_THROWS(symmetry_catalog("rotation", kP));
}

TEST_CASE("invariance of the Dirichlet energy under tempered translation") {
  const auto space = Space::create(kP, 256);
  std::mt19937_64 rng(4);
  const auto u = random_smooth_element(space, rng).trajectory();
  const auto S = symmetry_catalog("tempered-translation", kP);
  const auto r = check_invariance(lagrangian_catalog("dirichlet"), S, u, {-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(r.deviations[2] == 0.0);
  CHECK(r.max_deviation <= 1e-10);

  LagrangianSpec massive = lagrangian_from_expression("0.5*y^2 + 0.5*x^2");
  CHECK(check_invariance(massive, S, u, {1.0}).max_deviation > 1e-3);
}

TEST_CASE("Noether quantity: trivial cases") {
  const auto space = Space::create(kP, 64);
  const auto zero = SpaceElement::zero(space).trajectory();
  const auto S = symmetry_catalog("tempered-translation", kP);
  const auto L = lagrangian_catalog("dirichlet");
  const auto r = noether_constant(L, S, zero);
  CHECK(r.C_values.max_abs() == 0.0);
  CHECK(r.max_deviation == 0.0);
  CHECK(necessary_condition_residual(L, S, zero) <= 1e-10);

  std::mt19937_64 rng(1);
  const auto u = random_smooth_element(space, rng).trajectory();
  const SymmetrySpec frozen("frozen", [](double, double x, double) { return x; }, [](double, double) { return 0.0; });
  CHECK(noether_constant(L, frozen, u).C_values.max_abs() == 0.0);
  CHECK(r.first == 2);
  CHECK(r.last == 62);
}

TEST_CASE("classical momentum is exactly conserved on linear extremals") {
  const TemperedParams p{1.0, 0.0, 0.0, 2.0};
  const auto u = Trajectory(GridFunction::sample(p, 100, [](double t) { return 0.3 + 1.7 * t; }));
  const auto L = lagrangian_catalog("dirichlet");
  const auto r = noether_constant(L, symmetry_catalog("translation", p), u);
  CHECK(r.classical);
  CHECK(r.max_deviation <= 1e-10);
  CHECK(r.mean == doctest::Approx(1.7).epsilon(1e-12));
  const auto c = corollary_momentum(L, u);
  CHECK(c.noether.mean == doctest::Approx(1.7).epsilon(1e-12));
}

TEST_CASE("corollary requires an x-independent Lagrangian") {
  const auto space = Space::create(kP, 32);
  std::mt19937_64 rng(6);
  const auto u = random_smooth_element(space, rng).trajectory();
  CHECK_THROWS_AS(corollary_momentum(lagrangian_catalog("double-well"), u), DomainError);
  LagrangianSpec liar = lagrangian_catalog("double-well");
  liar.x_independent = true;
  CHECK_THROWS_AS(corollary_momentum(liar, u), DomainError);
  const auto z = corollary_momentum(lagrangian_catalog("dirichlet"), SpaceElement::zero(space).trajectory());
  CHECK(z.noether.mean == 0.0);
  CHECK(z.boundary_value == 0.0);
}

TEST_CASE("tempered Noether quantity on a manufactured extremal") {
  // Reported, not asserted constant: Ly * I_{a+} eta varies like ((t-a)/(b-t))^{1-alpha}.
  const auto u = manufactured_extremal(256).trajectory();
  const auto L = lagrangian_catalog("dirichlet");
  const auto r = noether_constant(L, symmetry_catalog("tempered-translation", kP), u);
  CHECK(std::isfinite(r.mean));
  CHECK(r.relative_drift > 0.0);
  const auto c = corollary_momentum(L, u);
  CHECK(std::isfinite(c.boundary_value));
}

TEST_CASE("coherence diagram") {
  const auto u = GridFunction::sample(kP, 128, [](double t) { return std::sin(pi * t) + t; });
  const auto L = lagrangian_catalog("dirichlet");
  const auto r = coherence_diagram(L, u);
  REQUIRE(r.modes.size() == 3);
  CHECK(r.coherent());
  CHECK(r.modes[1].sigma == 0.0);
  CHECK(r.modes[2].alpha == 1.0);
  // Both order-zero integrals are the identity, so the general formula doubles Ly * eta.
  CHECK(r.classical_ratio == doctest::Approx(2.0).epsilon(1e-12));

  const auto z = coherence_diagram(L, GridFunction(kP, 32));
  for (const auto& m : z.modes) CHECK(m.report.C_values.max_abs() == 0.0);
}
