#include "tempvar/bvp.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "tempvar/error.hpp"

namespace tempvar {

BilinearSystem assemble(const TemperedParams& params, std::size_t n, const GridFunction& f) {
  params.validate_embedding();
  if (n < 4) throw DomainError("assemble: n must be at least 4");
  BilinearSystem sys;
  sys.space = Space::create(params, n);
  sys.A = sys.space->gram();
  const auto& w = sys.space->weights();
  const double h = sys.space->step();
  const bool same = f.intervals() == n && f.params().a == params.a && f.params().b == params.b;
  sys.rhs.resize(static_cast<Eigen::Index>(n - 1));
  for (std::size_t i = 1; i < n; ++i) {
    const double fi = same ? f[i] : f.interpolate(params.a + static_cast<double>(i) * h);
    sys.rhs[static_cast<Eigen::Index>(i - 1)] = w[i] * fi;
  }
  return sys;
}

SpaceElement solve(const BilinearSystem& system) {
  Eigen::LLT<Eigen::MatrixXd> llt(system.A);
  if (llt.info() != Eigen::Success) throw NumericalError("solve: matrix is not positive definite");
  return SpaceElement::from_coefficients(system.space, llt.solve(system.rhs));
}

double galerkin_residual(const BilinearSystem& system, const SpaceElement& u) {
  return (system.A * u.coefficients() - system.rhs).cwiseAbs().maxCoeff();
}

double energy_gap(const BilinearSystem& system, const SpaceElement& u) {
  const Eigen::VectorXd c = u.coefficients();
  return std::abs(c.dot(system.A * c) - c.dot(system.rhs));
}

GridFunction forward_map(const TemperedParams& params, const std::function<double(double)>& u_star, std::size_t n,
                         std::size_t n_fine, bool include_zero_order) {
  params.validate();
  if (n < 3) throw DomainError("forward_map: n must be at least 3");
  std::size_t ratio = n_fine == 0 ? 8 : (n_fine + n - 1) / n;
  if (ratio < 8) ratio = 8;
  const std::size_t nf = ratio * n;

  const GridFunction u = GridFunction::sample(params, nf, u_star);
  const GridFunction d = left_caputo_derivative(u);
  const RlDerivative dd = right_rl_derivative(d);

  GridFunction f(params, n);
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = i * ratio;
    f[i] = dd.value[j] + (include_zero_order ? u[j] : 0.0);
  }
  f[0] = 2.0 * f[1] - f[2];
  f[n] = 2.0 * f[n - 1] - f[n - 2];
  return f;
}

std::vector<ConvergenceEntry> convergence_study(const TemperedParams& params, const std::function<double(double)>& u_star,
                                                const std::vector<std::size_t>& ns) {
  std::vector<ConvergenceEntry> out;
  for (std::size_t n : ns) {
    const GridFunction f = forward_map(params, u_star, n);
    const SpaceElement uh = solve(assemble(params, n, f));
    const GridFunction exact = GridFunction::sample(params, n, u_star);
    GridFunction err = uh.values() - exact;
    for (std::size_t i = 0; i < err.size(); ++i) err[i] *= err[i];
    ConvergenceEntry e;
    e.n = n;
    e.l2_error = std::sqrt(integrate(err));
    e.ratio = out.empty() ? 0.0 : out.back().l2_error / e.l2_error;
    out.push_back(e);
  }
  return out;
}

}  // namespace tempvar
