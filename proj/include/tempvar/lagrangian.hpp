#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tempvar/grid.hpp"

namespace tempvar {

/// Growth and structure constants declared by the caller. Coefficient
/// functions of the existence and mountain-pass conditions are taken as
/// constants here, which is enough for sampling-based falsification.
struct GrowthMetadata {
  // |L(x,y,t) - L(x,0,t)| <= r1 |y|^d1 + s1
  std::optional<double> d1, r1, s1;
  // |Lx| <= r2 |y|^d2 + s2
  std::optional<double> d2, r2, s2;
  // |Ly| <= r3 |y|^d3 + s3
  std::optional<double> d3, r3, s3;
  // L >= c1 |y|^2 + c2 |x|^d4 + c3 with c1 >= zeta > 0
  std::optional<double> zeta, d4, c1, c2, c3;
  // L(x, y, t) convex in (x, y) for each t
  bool convex = false;
  // Mountain-pass structure: Lx x + Ly y <= mu_L L, L >= Lambda |y|^2, and the
  // growth weight rho(|x|) = rho_coeff (1 + |x|)^rho_power with vartheta(t) = vartheta.
  std::optional<double> mu_L, Lambda;
  std::optional<double> rho_coeff, rho_power, vartheta;
};

struct LagrangianSpec {
  using Map = std::function<double(double x, double y, double t)>;

  std::string name;
  Map L;
  Map Lx;  ///< dL/dx
  Map Ly;  ///< dL/dy
  GrowthMetadata growth;
  /// Caller's declaration that L does not depend on x (Lx == 0).
  bool x_independent = false;
};

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

struct SampleBox {
  double x_lo = -5.0, x_hi = 5.0;
  double y_lo = -5.0, y_hi = 5.0;
  double t_lo = 0.0, t_hi = 1.0;
  std::size_t count = 10000;
};

/// Default box [-5, 5]^2 x [a, b].
SampleBox default_box(const TemperedParams& params, std::size_t count = 10000);

/// Low-discrepancy Halton points (bases 2, 3, 5) filling the box.
std::vector<SamplePoint> halton_sample(const SampleBox& box);

/// Named Lagrangians.
///   "dirichlet"     1/2 y^2
///   "linear-forced" 1/2 y^2 + 1/2 x^2 - f(t) x  (needs forcing)
///   "double-well"   1/2 y^2 + 1/4 (x^2 - 1)^2
///   "power"         1/2 y^2 - |x|^p / p
/// Throws std::invalid_argument for an unknown name or a missing forcing.
LagrangianSpec lagrangian_catalog(const std::string& name, const std::optional<GridFunction>& forcing = {},
                                  double p = 4.0);

bool is_catalog_lagrangian(const std::string& name);

/// 1/2 y^2 - f(t) x: the Dirichlet energy with a linear load.
LagrangianSpec forced_dirichlet(const GridFunction& forcing);

/// Lagrangian from an expression in x, y, t; partials are taken symbolically.
LagrangianSpec lagrangian_from_expression(const std::string& text);

/// Largest mismatch of Lx, Ly against central differences of L (step 1e-6),
/// relative to max(1, |partial|).
struct PartialsCheck {
  double max_error = 0.0;
  SamplePoint worst;
  bool pass = false;  ///< max_error <= 1e-5
};

PartialsCheck check_partials(const LagrangianSpec& spec, const std::vector<SamplePoint>& sample);

}  // namespace tempvar
