#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tempvar/fnspace.hpp"
#include "tempvar/lagrangian.hpp"
#include "tempvar/variational.hpp"

namespace tempvar {

struct GeometryReport {
  bool found = false;
  double j_zero = 0.0;  ///< J(0), must be exactly zero
  double rho = 0.0;
  double eta = 0.0;     ///< minimum of J over the sampled ring of radius rho
  double lambda = 0.0;  ///< scaling with J(lambda u0) < 0
  std::optional<SpaceElement> e;
  std::string message;
};

/// Probes J(0) = 0, a positive ring (64 random directions, radius halved until
/// the minimum is positive) and a far point lambda sin(pi (t-a)/(b-a)),
/// lambda = 1, 2, 4, ... <= 1e6. Failure is reported, not thrown.
GeometryReport verify_geometry(const LagrangianSpec& L, const TemperedParams& params, std::size_t n, std::mt19937_64& rng,
                               std::size_t directions = 64);

struct PathState {
  std::vector<SpaceElement> knots;  ///< knots.front() == 0, knots.back() == e
  std::vector<double> values;
  std::size_t peak_index = 0;
};

struct MountainPassOptions {
  std::size_t knots = 17;
  double tol = 1e-4;
  std::size_t max_iter = 2000;
  /// Interior knots start on the segment [0, e] displaced by
  /// perturbation * ||e|| * sin(pi theta) * r, r a random smooth unit element.
  double perturbation = 0.0;
  std::uint64_t seed = 42;
};

struct MountainPassReport {
  SolveReport solve;  ///< extremal = peak knot; trace holds the peak value per iteration
  PathState path;
  double initial_peak = 0.0;
};

/// String method: the peak knot is maximized along the local path tangent and
/// descended orthogonally to it under an Armijo test on that maximum; the other
/// interior knots take Armijo descent steps and are re-equidistributed in the
/// space norm on both sides of the peak. Stops when the peak gradient norm <= tol.
MountainPassReport find_critical_point(const LagrangianSpec& L, const SpaceElement& e, const MountainPassOptions& options);

/// Samples (M1)-(M5) and the scaling consequence of (M3) for lambda in {2, 4, 8}.
HypothesisReport validate_mp_hypotheses(const LagrangianSpec& L, const std::vector<SamplePoint>& sample);

}  // namespace tempvar
