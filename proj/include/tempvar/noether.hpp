#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tempvar/fnspace.hpp"
#include "tempvar/lagrangian.hpp"

namespace tempvar {

/// One-parameter transformation x -> xi(s, x, t) with generator eta = dxi/ds at s = 0.
class SymmetrySpec {
 public:
  using Xi = std::function<double(double s, double x, double t)>;
  using Eta = std::function<double(double x, double t)>;

  /// Checks xi(0, x, t) = x and eta against a central difference of xi on
  /// Halton samples of [-5, 5] x [t_lo, t_hi]; throws DomainError otherwise.
  SymmetrySpec(std::string name, Xi xi, Eta eta, double t_lo = 0.0, double t_hi = 1.0);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] double xi(double s, double x, double t) const { return xi_(s, x, t); }
  [[nodiscard]] double eta(double x, double t) const { return eta_(x, t); }

 private:
  std::string name_;
  Xi xi_;
  Eta eta_;
};

/// "translation" x + s, "tempered-translation" x + s e^{-sigma t}, "scaling" x e^s.
SymmetrySpec symmetry_catalog(const std::string& name, const TemperedParams& params);
bool is_catalog_symmetry(const std::string& name);

/// xi in (s, x, t), eta in (x, t).
SymmetrySpec symmetry_from_expressions(const std::string& xi, const std::string& eta, const TemperedParams& params);

struct InvarianceReport {
  double base_value = 0.0;
  std::vector<double> s_values;
  std::vector<double> deviations;
  double max_deviation = 0.0;
};

InvarianceReport check_invariance(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u,
                                  const std::vector<double>& s_values);

/// L2 norm over nodes 1..n-1 of Ly CD_{a+} eta - eta D_{b-} Ly.
double necessary_condition_residual(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u);

struct NoetherReport {
  GridFunction C_values;  ///< full grid; statistics use nodes first..last
  std::size_t first = 0;
  std::size_t last = 0;
  double mean = 0.0;
  double max_deviation = 0.0;
  double relative_drift = 0.0;
  bool classical = false;  ///< evaluated as Ly * eta
};

/// Ly I^{1-alpha,sigma}_{a+} eta + eta I^{1-alpha,sigma}_{b-} Ly. At
/// (alpha, sigma) = (1, 0) the classical momentum Ly * eta is used instead.
NoetherReport noether_constant(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u);

/// The tempered formula without the classical branch; integrals of order 0
/// are read as the identity, so (1, 0) gives 2 Ly eta.
NoetherReport noether_general(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u);

struct MomentumReport {
  NoetherReport noether;
  double right_limit = 0.0;  ///< t -> b of Ly I_{a+} e^{-sigma t}
  double left_limit = 0.0;   ///< t -> a of e^{-sigma t} I_{b-} Ly
  double boundary_value = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
};

/// Noether quantity for the symmetry x + s e^{-sigma t}. Requires
/// L.x_independent and |Lx| <= 1e-8 along u (DomainError otherwise).
MomentumReport corollary_momentum(const LagrangianSpec& L, const Trajectory& u);

struct CoherenceMode {
  double alpha = 0.0;
  double sigma = 0.0;
  NoetherReport report;
};

struct CoherenceReport {
  std::vector<CoherenceMode> modes;  ///< (alpha, sigma), (alpha, 0), (1, 0)
  double sigma_zero_gap = 0.0;         ///< mode 2 vs noether_constant at (alpha, 0)
  double classical_gap = 0.0;          ///< mode 3 vs noether_general at (1, 0)
  /// Mean of mode 3 over Ly * eta where the latter is nonzero; 2 for the formula as written.
  double classical_ratio = 0.0;
  [[nodiscard]] bool coherent(double tol = 1e-10) const { return sigma_zero_gap <= tol && classical_gap <= tol; }
};

/// Evaluates the tempered-translation Noether quantity of u in the three modes.
CoherenceReport coherence_diagram(const LagrangianSpec& L, const GridFunction& u);

}  // namespace tempvar
