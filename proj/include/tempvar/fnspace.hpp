#pragma once

// Discrete realization of the tempered fractional Sobolev space H^{alpha,sigma}_0(a, b):
// grid functions vanishing at both endpoints, normed by
//   ||u||^2 = ||u||_{L2}^2 + ||CD^{alpha,sigma}_{a+} u||_{L2}^2
// with trapezoidal L2 quadrature.

#include <cstddef>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "tempvar/grid.hpp"
#include "tempvar/tempered_ops.hpp"

namespace tempvar {

class SpaceElement;

/// Interior hat functions phi_1..phi_{n-1} and their left Caputo derivatives.
class BasisSet {
 public:
  BasisSet(const TemperedParams& params, std::size_t n, const OperatorMatrix& caputo);

  [[nodiscard]] std::size_t intervals() const { return n_; }
  [[nodiscard]] std::size_t dimension() const { return n_ - 1; }
  /// Hat function centred at interior node i (1 <= i <= n - 1).
  [[nodiscard]] GridFunction function(std::size_t i) const;
  /// Column k holds the derivative of phi_{k+1} at all n + 1 nodes.
  [[nodiscard]] const Eigen::MatrixXd& derivative_matrix() const { return derivatives_; }

 private:
  TemperedParams params_;
  std::size_t n_;
  Eigen::MatrixXd derivatives_;
};

/// Shared, immutable discretization data for one (params, n).
class Space {
 public:
  /// Requires alpha in (1/2, 1), sigma > 0 and n >= 2.
  static std::shared_ptr<const Space> create(const TemperedParams& params, std::size_t n);

  [[nodiscard]] const TemperedParams& params() const { return params_; }
  [[nodiscard]] std::size_t intervals() const { return n_; }
  [[nodiscard]] double step() const { return params_.length() / static_cast<double>(n_); }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] const OperatorMatrix& caputo() const { return caputo_; }
  [[nodiscard]] const BasisSet& basis() const { return basis_; }

  /// Gram matrix of the hat basis in the space inner product (assembled on first use).
  [[nodiscard]] const Eigen::MatrixXd& gram() const;
  /// Solves gram() * c = rhs.
  [[nodiscard]] Eigen::VectorXd solve_gram(const Eigen::VectorXd& rhs) const;

  Space(const TemperedParams& params, std::size_t n);

 private:
  void assemble_gram() const;

  TemperedParams params_;
  std::size_t n_;
  std::vector<double> weights_;
  OperatorMatrix caputo_;
  BasisSet basis_;
  mutable std::once_flag gram_once_;
  mutable Eigen::MatrixXd gram_;
  mutable Eigen::LLT<Eigen::MatrixXd> gram_factor_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Element of the discrete space: zero boundary values, cached Caputo derivative.
class SpaceElement {
 public:
  /// Throws DomainError unless both boundary values are exactly zero.
  SpaceElement(SpacePtr space, GridFunction values);
  static SpaceElement zero(SpacePtr space);
  /// Element with the given interior nodal values (the hat-basis coefficients).
  static SpaceElement from_coefficients(SpacePtr space, const Eigen::VectorXd& coefficients);

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] const GridFunction& values() const { return values_; }
  [[nodiscard]] const GridFunction& caputo() const { return caputo_; }
  [[nodiscard]] Eigen::VectorXd coefficients() const;
  [[nodiscard]] Trajectory trajectory() const { return Trajectory(values_, caputo_); }

  /// this + c * other, combining the cached derivatives linearly.
  [[nodiscard]] SpaceElement plus_scaled(double c, const SpaceElement& other) const;
  [[nodiscard]] SpaceElement scaled(double c) const;

 private:
  SpaceElement(SpacePtr space, GridFunction values, GridFunction caputo);

  SpacePtr space_;
  GridFunction values_;
  GridFunction caputo_;
};

double inner_product(const SpaceElement& u, const SpaceElement& v);
double norm(const SpaceElement& u);
double l2_norm(const SpaceElement& u);
double caputo_l2_norm(const SpaceElement& u);

/// sqrt(gamma(2 alpha - 1, 2 sigma (b - a))) / ((2 sigma)^(alpha - 1/2) Gamma(alpha)).
double embedding_constant(const TemperedParams& params);

struct EmbeddingDiagnostic {
  double lhs = 0.0;  ///< ||u||_inf
  double rhs = 0.0;  ///< C ||u||
  bool pass = false;
};

/// Passes when lhs <= rhs * (1 + slack).
EmbeddingDiagnostic check_embedding(const SpaceElement& u, double slack = 0.02);

struct PoincareDiagnostic {
  double l2 = 0.0;
  double caputo_l2 = 0.0;
  double ratio = 0.0;
};

/// ||u||_{L2} / ||CD u||_{L2}; throws DomainError for the zero element.
PoincareDiagnostic check_poincare(const SpaceElement& u);

/// sum_k c_k sin(k pi (t - a)/(b - a)) / k^2 with c_k ~ U[-1, 1], k = 1..modes.
SpaceElement random_smooth_element(const SpacePtr& space, std::mt19937_64& rng, int modes = 8);

/// Uniform random interior values in [-1, 1] smoothed by one Jacobi sweep.
SpaceElement random_jacobi_element(const SpacePtr& space, std::mt19937_64& rng);

}  // namespace tempvar
