#pragma once

// Galerkin solver for D_{b-} D_{a+} u + u = f, u(a) = u(b) = 0, on the
// interior hat basis.

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "tempvar/fnspace.hpp"

namespace tempvar {

struct BilinearSystem {
  SpacePtr space;
  Eigen::MatrixXd A;    ///< stiffness + mass, (n-1) x (n-1)
  Eigen::VectorXd rhs;  ///< trapezoidal int f phi_i
};

/// Requires alpha in (1/2, 1), sigma > 0, n >= 4. f is interpolated onto the grid if its grid differs.
BilinearSystem assemble(const TemperedParams& params, std::size_t n, const GridFunction& f);

/// Cholesky solve; throws NumericalError if A is not positive definite.
SpaceElement solve(const BilinearSystem& system);

/// max_i |a(u, phi_i) - rhs_i|.
double galerkin_residual(const BilinearSystem& system, const SpaceElement& u);

/// |a(u, u) - phi(u)|.
double energy_gap(const BilinearSystem& system, const SpaceElement& u);

/// f = D_{b-} CD_{a+} u* (+ u* when include_zero_order) on a fine grid of
/// n_fine intervals (default 8 n, rounded up to a multiple of n), restricted
/// to the n-interval grid. Endpoint values are extrapolated linearly.
GridFunction forward_map(const TemperedParams& params, const std::function<double(double)>& u_star, std::size_t n,
                         std::size_t n_fine = 0, bool include_zero_order = true);

struct ConvergenceEntry {
  std::size_t n = 0;
  double l2_error = 0.0;
  double ratio = 0.0;  ///< previous error / this error; 0 for the first entry
};

/// Manufactured-solution study: forward_map, assemble, solve, compare with u*.
std::vector<ConvergenceEntry> convergence_study(const TemperedParams& params, const std::function<double(double)>& u_star,
                                                const std::vector<std::size_t>& ns);

}  // namespace tempvar
