#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tempvar/fnspace.hpp"
#include "tempvar/lagrangian.hpp"

namespace tempvar {

/// Trapezoidal quadrature of int L(u, CD u, t) dt. Throws NumericalError on a
/// non-finite integrand.
double evaluate(const LagrangianSpec& L, const Trajectory& u);
double evaluate(const LagrangianSpec& L, const SpaceElement& u);

/// int Lx v + Ly CD v dt.
double gateaux_derivative(const LagrangianSpec& L, const SpaceElement& u, const SpaceElement& v);

/// Derivative against every interior hat function.
Eigen::VectorXd gateaux_vector(const LagrangianSpec& L, const SpaceElement& u);

struct Gradient {
  SpaceElement direction;  ///< Riesz representative
  double norm = 0.0;
};

Gradient gradient_with_norm(const LagrangianSpec& L, const SpaceElement& u);
SpaceElement gradient(const LagrangianSpec& L, const SpaceElement& u);

/// Discrete L2 norm of Lx + D_{b-} Ly over nodes 1..n-1.
double el_residual(const LagrangianSpec& L, const Trajectory& u);
double el_residual(const LagrangianSpec& L, const SpaceElement& u);

struct ConditionReport {
  std::string name;
  bool checked = false;  ///< false when the metadata needed is missing
  bool pass = true;
  std::size_t violations = 0;
  std::optional<SamplePoint> witness;
  double worst_excess = 0.0;
  std::string note;
};

struct HypothesisReport {
  std::vector<ConditionReport> conditions;

  [[nodiscard]] bool all_pass() const;
  /// Throws std::out_of_range for an unknown name.
  [[nodiscard]] const ConditionReport& at(const std::string& name) const;
};

/// Samples (L1)-(L5). Pass/fail only for conditions whose metadata is declared.
HypothesisReport validate_hypotheses(const LagrangianSpec& L, const std::vector<SamplePoint>& sample);

struct CoercivityBound {
  double lower = 0.0;
  double actual = 0.0;
  bool holds = false;
};

/// Lower bound zeta |u|^2 - |c2| (b-a)^(1-d4/2) K^d4 |u|^d4 - (b-a)|c3| with
/// |u| = ||CD u||_{L2}. Throws DomainError if zeta, d4, c2 or c3 is undeclared.
CoercivityBound coercivity_bound(const LagrangianSpec& L, const SpaceElement& u, double tol = 1e-10);

struct TraceEntry {
  std::size_t iteration = 0;
  double value = 0.0;
  double grad_norm = 0.0;
};

struct SolveReport {
  SpaceElement extremal;
  double value = 0.0;
  double grad_norm = 0.0;
  double el_residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<TraceEntry> trace;
};

/// Riesz-gradient descent with Armijo backtracking (c = 1e-4, factor 1/2,
/// initial step 1).
SolveReport minimize_direct(const LagrangianSpec& L, const SpaceElement& u0, double tol, std::size_t max_iter);

}  // namespace tempvar
