#pragma once

// Discrete tempered fractional integrals and derivatives on uniform grids.
//
// Every operator is realized by conjugation with an exponential: the
// classical product-trapezoid (integrals) or L1 (Caputo derivatives) scheme is
// applied to e^{+-sigma t} u and the result multiplied by e^{-+sigma t}.
// Right-sided operators are the reflections t -> a + b - t of the left ones.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tempvar/grid.hpp"

namespace tempvar {

enum class Side { left, right };
enum class Family { rl_integral, rl_derivative, caputo_derivative };

/// How an integral of order zero is treated. Only the case sigma = 0 has a
/// defined meaning (the identity); everything else is a domain error.
enum class ZeroOrder { reject, identity };

struct OperatorKind {
  Side side = Side::left;
  Family family = Family::rl_integral;
  /// Integral order in (0, 1]; ignored for derivatives, whose order is params.alpha.
  double order = 1.0;
  ZeroOrder zero_order = ZeroOrder::reject;
};

GridFunction left_tempered_integral(const GridFunction& u, double order,
                                    ZeroOrder zero_order = ZeroOrder::reject);
GridFunction right_tempered_integral(const GridFunction& u, double order,
                                     ZeroOrder zero_order = ZeroOrder::reject);

GridFunction left_caputo_derivative(const GridFunction& u);
GridFunction right_caputo_derivative(const GridFunction& u);

/// Riemann-Liouville derivative on the grid. When the boundary value on the
/// operator's own side is nonzero, the derivative diverges at that endpoint:
/// the node is reported in singular_node and its value is set to zero.
struct RlDerivative {
  GridFunction value;
  std::optional<std::size_t> singular_node;
};

RlDerivative left_rl_derivative(const GridFunction& u);
RlDerivative right_rl_derivative(const GridFunction& u);

/// Dense matrix form of one of the operators above.
class OperatorMatrix {
 public:
  OperatorMatrix(const OperatorKind& kind, const TemperedParams& params, std::size_t n);

  [[nodiscard]] const OperatorKind& kind() const { return kind_; }
  [[nodiscard]] const TemperedParams& params() const { return params_; }
  [[nodiscard]] std::size_t intervals() const { return n_; }
  [[nodiscard]] const Eigen::MatrixXd& entries() const { return entries_; }
  /// Rows whose continuous value diverges (RL derivatives only); zeroed in entries().
  [[nodiscard]] const std::vector<std::size_t>& singular_rows() const { return singular_rows_; }

  /// Reproduces the corresponding free function bit for bit.
  [[nodiscard]] GridFunction apply(const GridFunction& u) const;

 private:
  OperatorKind kind_;
  TemperedParams params_;
  std::size_t n_;
  Eigen::MatrixXd entries_;
  std::vector<std::size_t> singular_rows_;
};

OperatorMatrix operator_matrix(const OperatorKind& kind, const TemperedParams& params, std::size_t n);

/// Applies an operator kind directly (no matrix), O(n^2) time and O(n) memory.
GridFunction apply_operator(const OperatorKind& kind, const GridFunction& u);

/// The reflection u(t) -> u(a + b - t).
GridFunction reflect(const GridFunction& u);

/// Max-norm residuals of the composition identities
///   C D^{a,s}_{a+} I^{a,s}_{a+} u = u,  I^{a,s}_{a+} C D^{a,s}_{a+} u = u - e^{-s(t-a)} u(a)
/// and their right-sided mirrors.
struct CompositionReport {
  double left_derivative_of_integral = 0.0;
  double left_integral_of_derivative = 0.0;
  double right_derivative_of_integral = 0.0;
  double right_integral_of_derivative = 0.0;

  [[nodiscard]] double max() const;
};

CompositionReport verify_composition(const GridFunction& u);

/// Residuals of the two integration-by-parts identities, in absolute and
/// relative form (relative to the larger side).
struct IntegrationByPartsReport {
  double derivative_lhs = 0.0;  ///< int u * D_{b-} v
  double derivative_rhs = 0.0;  ///< boundary terms + int CD_{a+} u * v
  double derivative_residual = 0.0;
  double derivative_relative = 0.0;
  double integral_lhs = 0.0;    ///< int (I_{a+} u) v
  double integral_rhs = 0.0;    ///< int u (I_{b-} v)
  double integral_residual = 0.0;
  double integral_relative = 0.0;
};

IntegrationByPartsReport verify_integration_by_parts(const GridFunction& u, const GridFunction& v);

/// A grid function together with its left tempered Caputo derivative. Unlike
/// SpaceElement it carries no boundary constraint.
struct Trajectory {
  GridFunction u;
  GridFunction caputo;

  explicit Trajectory(GridFunction values);
  Trajectory(GridFunction values, GridFunction derivative);
};

}  // namespace tempvar
