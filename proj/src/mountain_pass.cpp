#include "tempvar/mountain_pass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tempvar/error.hpp"
#include "tempvar/parallel.hpp"

namespace tempvar {
namespace {

constexpr double kArmijo = 1e-4;

// Overflow during a trial step only means the step was too long.
double trial_value(const LagrangianSpec& L, const SpaceElement& u) {
  try {
    return evaluate(L, u);
  } catch (const NumericalError&) {
    return INFINITY;
  }
}

double trial_slope(const LagrangianSpec& L, const SpaceElement& u, const SpaceElement& dir) {
  try {
    return gateaux_derivative(L, u, dir);
  } catch (const NumericalError&) {
    return NAN;
  }
}

struct Climb {
  SpaceElement point;
  double value;
  bool ok;
};

// Maximizes J along the line w + theta tau (tau a unit vector) by bracketing
// the sign change of the directional derivative and regula falsi.
Climb climb(const LagrangianSpec& L, const SpaceElement& w, const SpaceElement& tau, double scale, double target) {
  auto slope = [&](double theta) { return trial_slope(L, w.plus_scaled(theta, tau), tau); };
  const double d0 = slope(0.0);
  if (!std::isfinite(d0)) return {w, trial_value(L, w), false};
  if (std::abs(d0) <= target) return {w, trial_value(L, w), true};

  const double dir = d0 > 0.0 ? 1.0 : -1.0;
  double lo = 0.0, flo = d0;
  double hi = dir * 1e-2 * scale, fhi = slope(hi);
  int expansions = 0;
  while (fhi * dir > 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = slope(hi);
    if (++expansions > 60 || !std::isfinite(fhi)) return {w, trial_value(L, w), false};
  }
  // Illinois variant of regula falsi on [lo, hi].
  double theta = hi, ftheta = fhi;
  int side = 0;
  for (int it = 0; it < 200 && std::abs(ftheta) > target; ++it) {
    theta = (lo * fhi - hi * flo) / (fhi - flo);
    ftheta = slope(theta);
    if (!std::isfinite(ftheta)) return {w, trial_value(L, w), false};
    if (ftheta * fhi > 0.0) {
      hi = theta;
      fhi = ftheta;
      if (side == -1) flo *= 0.5;
      side = -1;
    } else {
      lo = theta;
      flo = ftheta;
      if (side == 1) fhi *= 0.5;
      side = 1;
    }
  }
  SpaceElement p = w.plus_scaled(theta, tau);
  const double v = trial_value(L, p);
  return {std::move(p), v, std::abs(ftheta) <= target};
}

std::optional<SpaceElement> unit_tangent(const std::vector<SpaceElement>& knots, std::size_t p) {
  SpaceElement d = knots[p + 1].plus_scaled(-1.0, knots[p - 1]);
  const double nd = norm(d);
  if (!(nd > 0.0)) return std::nullopt;
  return d.scaled(1.0 / nd);
}

// Re-places knots first+1..last-1 at equal space-norm arc length along the
// polyline through knots[first..last].
void equidistribute(std::vector<SpaceElement>& knots, std::size_t first, std::size_t last) {
  if (last <= first + 1) return;
  std::vector<double> arc{0.0};
  for (std::size_t k = first; k < last; ++k) arc.push_back(arc.back() + norm(knots[k + 1].plus_scaled(-1.0, knots[k])));
  const double total = arc.back();
  if (!(total > 0.0)) return;
  const std::vector<SpaceElement> old(knots.begin() + static_cast<std::ptrdiff_t>(first),
                                      knots.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  std::size_t seg = 0;
  const std::size_t count = last - first;
  for (std::size_t j = 1; j < count; ++j) {
    const double s = total * static_cast<double>(j) / static_cast<double>(count);
    while (seg + 1 < count && arc[seg + 1] < s) ++seg;
    const double len = arc[seg + 1] - arc[seg];
    const double frac = len > 0.0 ? (s - arc[seg]) / len : 0.0;
    knots[first + j] = old[seg].plus_scaled(frac, old[seg + 1].plus_scaled(-1.0, old[seg]));
  }
}

// One Armijo step; J is unbounded below beyond the pass, so steps that would
// take the knot under floor are refused and the knot stays put.
SpaceElement descend(const LagrangianSpec& L, const SpaceElement& u, double value, double floor, double& step,
                     double& new_value) {
  const Gradient g = gradient_with_norm(L, u);
  new_value = value;
  if (!(g.norm > 0.0) || value <= floor) return u;
  double s = std::min(1.0, 2.0 * step);
  while (s > 1e-12) {
    SpaceElement cand = u.plus_scaled(-s, g.direction);
    const double v = trial_value(L, cand);
    if (v <= value - kArmijo * s * g.norm * g.norm) {
      if (v < floor) return u;
      step = s;
      new_value = v;
      return cand;
    }
    s *= 0.5;
  }
  return u;
}

}  // namespace

GeometryReport verify_geometry(const LagrangianSpec& L, const TemperedParams& params, std::size_t n, std::mt19937_64& rng,
                               std::size_t directions) {
  const SpacePtr space = Space::create(params, n);
  GeometryReport r;
  r.j_zero = evaluate(L, SpaceElement::zero(space));
  if (r.j_zero != 0.0) {
    r.message = "geometry not found: J(0) is not zero";
    return r;
  }

  const double pi = std::numbers::pi;
  GridFunction profile = GridFunction::sample(params, n, [&](double t) { return std::sin(pi * (t - params.a) / params.length()); });
  profile[0] = 0.0;
  profile[n] = 0.0;
  const SpaceElement u0(space, profile);
  for (double lambda = 1.0; lambda <= 1e6; lambda *= 2.0) {
    const SpaceElement cand = u0.scaled(lambda);
    if (evaluate(L, cand) < 0.0) {
      r.lambda = lambda;
      r.e = cand;
      break;
    }
  }
  if (!r.e) {
    r.message = "geometry not found: no lambda <= 1e6 with J(lambda u0) < 0";
    return r;
  }

  std::vector<SpaceElement> dirs;
  for (std::size_t k = 0; k < directions; ++k) {
    SpaceElement d = random_smooth_element(space, rng);
    dirs.push_back(d.scaled(1.0 / norm(d)));
  }
  double rho = std::min(1.0, 0.5 * norm(*r.e));
  for (int halving = 0; halving < 40; ++halving, rho *= 0.5) {
    double lo = INFINITY;
    for (const auto& d : dirs) lo = std::min(lo, evaluate(L, d.scaled(rho)));
    if (lo > 0.0) {
      r.rho = rho;
      r.eta = lo;
      r.found = true;
      r.message = "geometry verified";
      return r;
    }
  }
  r.message = "geometry not found: no radius with a positive ring minimum";
  return r;
}

MountainPassReport find_critical_point(const LagrangianSpec& L, const SpaceElement& e, const MountainPassOptions& opt) {
  const std::size_t m = opt.knots;
  if (m < 8) throw DomainError("find_critical_point: need at least 8 knots");
  if (!(opt.tol > 0.0)) throw DomainError("find_critical_point: tol must be positive");
  const SpacePtr& space = e.space();
  const double e_norm = norm(e);
  if (!(e_norm > 0.0)) throw DomainError("find_critical_point: e must be nonzero");

  PathState path;
  std::mt19937_64 rng(opt.seed);
  std::optional<SpaceElement> bump;
  if (opt.perturbation != 0.0) {
    SpaceElement r = random_smooth_element(space, rng);
    bump = r.scaled(opt.perturbation * e_norm / norm(r));
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double theta = static_cast<double>(k) / static_cast<double>(m - 1);
    if (k == 0) {
      path.knots.push_back(SpaceElement::zero(space));
    } else if (k == m - 1) {
      path.knots.push_back(e);
    } else {
      SpaceElement u = e.scaled(theta);
      if (bump) u = u.plus_scaled(std::sin(std::numbers::pi * theta), *bump);
      path.knots.push_back(std::move(u));
    }
  }
  path.values.resize(m);
  for (std::size_t k = 0; k < m; ++k) path.values[k] = evaluate(L, path.knots[k]);

  MountainPassReport out{SolveReport{e, path.values.back(), 0.0, 0.0, 0, false, "", {}}, path, 0.0};

  // Degenerate case: e itself is critical.
  const Gradient ge = gradient_with_norm(L, e);
  if (ge.norm <= opt.tol) {
    out.solve.grad_norm = ge.norm;
    out.solve.converged = true;
    out.solve.el_residual = el_residual(L, e);
    out.solve.message = "endpoint e is critical";
    out.path.peak_index = m - 1;
    out.initial_peak = out.solve.value;
    return out;
  }

  std::size_t p = 1;
  for (std::size_t k = 1; k + 1 < m; ++k)
    if (path.values[k] > path.values[p]) p = k;
  path.peak_index = p;

  const double climb_target = 0.1 * opt.tol;
  std::optional<SpaceElement> tau = unit_tangent(path.knots, p);
  if (!tau) throw NumericalError("find_critical_point: degenerate path");
  {
    const double scale = norm(path.knots[p + 1].plus_scaled(-1.0, path.knots[p - 1]));
    Climb c = climb(L, path.knots[p], *tau, scale, climb_target);
    path.knots[p] = std::move(c.point);
    path.values[p] = c.value;
  }
  out.initial_peak = path.values[p];

  const double floor = std::min(path.values.front(), path.values.back());
  std::vector<double> steps(m, 1.0);
  double peak_step = 1.0;
  std::size_t it = 0;
  Gradient g = gradient_with_norm(L, path.knots[p]);
  out.solve.trace.push_back({0, path.values[p], g.norm});
  std::string message = "max_iter reached";

  while (g.norm > opt.tol && it < opt.max_iter) {
    // Peak: remove the tangential part, step, re-maximize along tau.
    const double g_par = gateaux_derivative(L, path.knots[p], *tau);
    const SpaceElement g_perp = g.direction.plus_scaled(-g_par, *tau);
    const double perp_sq = std::max(0.0, g.norm * g.norm - g_par * g_par);
    const double scale = norm(path.knots[p + 1].plus_scaled(-1.0, path.knots[p - 1]));
    std::optional<Climb> accepted;
    double s = std::min(1.0, 2.0 * peak_step);
    while (s > 1e-12) {
      Climb c = climb(L, path.knots[p].plus_scaled(-s, g_perp), *tau, scale, climb_target);
      if (c.ok && c.value <= path.values[p] - kArmijo * s * perp_sq) {
        accepted.emplace(std::move(c));
        peak_step = s;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      message = "peak step rejected at minimum step size";
      break;
    }

    // Other interior knots descend independently.
    std::vector<std::optional<SpaceElement>> moved(m);
    std::vector<double> moved_values(m, 0.0);
    parallel_for(1, m - 1, [&](std::size_t k) {
      if (k == p) return;
      moved[k].emplace(descend(L, path.knots[k], path.values[k], floor, steps[k], moved_values[k]));
    });
    for (std::size_t k = 1; k + 1 < m; ++k) {
      if (k == p) continue;
      path.knots[k] = std::move(*moved[k]);
      path.values[k] = moved_values[k];
    }
    path.knots[p] = std::move(accepted->point);
    path.values[p] = accepted->value;

    // Re-equidistribute both sides of the peak; undone if any knot would rise above it.
    {
      std::vector<SpaceElement> trial = path.knots;
      equidistribute(trial, 0, p);
      equidistribute(trial, p, m - 1);
      std::vector<double> trial_values(m);
      parallel_for(0, m, [&](std::size_t k) { trial_values[k] = trial_value(L, trial[k]); });
      bool fine = true;
      for (std::size_t k = 0; k < m; ++k)
        if (k != p && trial_values[k] > path.values[p]) fine = false;
      if (fine) {
        path.knots = std::move(trial);
        path.values = std::move(trial_values);
      }
    }

    // Refresh the tangent only if the peak is still maximal along it.
    if (auto fresh = unit_tangent(path.knots, p)) {
      const double sc = norm(path.knots[p + 1].plus_scaled(-1.0, path.knots[p - 1]));
      Climb c = climb(L, path.knots[p], *fresh, sc, climb_target);
      if (c.ok && c.value <= path.values[p]) {
        tau = std::move(fresh);
        path.knots[p] = std::move(c.point);
        path.values[p] = c.value;
      }
    }

    ++it;
    g = gradient_with_norm(L, path.knots[p]);
    out.solve.trace.push_back({it, path.values[p], g.norm});
  }

  path.peak_index = p;
  out.solve.extremal = path.knots[p];
  out.solve.value = path.values[p];
  out.solve.grad_norm = g.norm;
  out.solve.iterations = it;
  out.solve.converged = g.norm <= opt.tol;
  out.solve.el_residual = el_residual(L, path.knots[p]);
  out.solve.message = out.solve.converged ? "converged" : message;
  out.path = std::move(path);
  return out;
}

HypothesisReport validate_mp_hypotheses(const LagrangianSpec& L, const std::vector<SamplePoint>& sample) {
  const auto& g = L.growth;
  HypothesisReport out;
  auto check = [](ConditionReport& r, double lhs, double rhs, const SamplePoint& p) {
    const double excess = lhs - rhs;
    if (excess > 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)) || !std::isfinite(excess)) {
      ++r.violations;
      r.pass = false;
      if (!r.witness || excess > r.worst_excess) {
        r.worst_excess = excess;
        r.witness = p;
      }
    }
  };
  auto fresh = [](const std::string& name, bool checked, const std::string& note = "") {
    ConditionReport r;
    r.name = name;
    r.checked = checked;
    r.note = checked ? note : "metadata not declared; skipped";
    return r;
  };

  {
    ConditionReport r = fresh("M1", true, "midpoint convexity in y on consecutive sample pairs");
    for (std::size_t k = 0; k + 1 < sample.size(); ++k) {
      const auto& p = sample[k];
      const double y2 = sample[k + 1].y;
      check(r, L.L(p.x, 0.5 * (p.y + y2), p.t), 0.5 * (L.L(p.x, p.y, p.t) + L.L(p.x, y2, p.t)), p);
    }
    out.conditions.push_back(r);
  }

  if (g.rho_coeff && g.rho_power && g.vartheta) {
    ConditionReport r = fresh("M2", true, "rho(s) = rho_coeff (1 + s)^rho_power, vartheta constant");
    for (const auto& p : sample) {
      const double bound = *g.rho_coeff * std::pow(1.0 + std::abs(p.x), *g.rho_power) * (*g.vartheta + p.y * p.y);
      const double ly = L.Ly(p.x, p.y, p.t);
      check(r, std::abs(L.L(p.x, p.y, p.t)), bound, p);
      check(r, std::abs(L.Lx(p.x, p.y, p.t)), bound, p);
      check(r, ly * ly, bound, p);
    }
    out.conditions.push_back(r);
  } else {
    out.conditions.push_back(fresh("M2", false));
  }

  const bool mu_ok = g.mu_L && *g.mu_L > 0.0 && *g.mu_L < 2.0;
  if (g.mu_L && !mu_ok) {
    ConditionReport r = fresh("M3", true, "mu_L outside (0, 2)");
    r.pass = false;
    out.conditions.push_back(r);
  } else if (mu_ok) {
    ConditionReport r = fresh("M3", true);
    for (const auto& p : sample)
      check(r, L.Lx(p.x, p.y, p.t) * p.x + L.Ly(p.x, p.y, p.t) * p.y, *g.mu_L * L.L(p.x, p.y, p.t), p);
    out.conditions.push_back(r);
  } else {
    out.conditions.push_back(fresh("M3", false));
  }

  if (g.Lambda) {
    ConditionReport r = fresh("M4", true);
    if (!(*g.Lambda > 0.0)) {
      r.pass = false;
      r.note = "Lambda must be positive";
    } else {
      for (const auto& p : sample) check(r, *g.Lambda * p.y * p.y, L.L(p.x, p.y, p.t), p);
      if (mu_ok)
        r.note = "with the scaling consequence of M3 this forces Lambda lambda^2 |y|^2 <= lambda^mu_L L for all lambda > 1";
    }
    out.conditions.push_back(r);
  } else {
    out.conditions.push_back(fresh("M4", false));
  }

  {
    ConditionReport r = fresh("M5", true);
    for (const auto& p : sample) {
      const double v = L.L(p.x, 0.0, p.t);
      if (v != 0.0) {
        ++r.violations;
        r.pass = false;
        if (!r.witness || std::abs(v) > r.worst_excess) {
          r.worst_excess = std::abs(v);
          r.witness = SamplePoint{p.x, 0.0, p.t};
        }
      }
    }
    out.conditions.push_back(r);
  }

  if (mu_ok) {
    ConditionReport r = fresh("M3-scaling", true, "L(lx, ly, t) <= l^mu_L L(x, y, t), l in {2, 4, 8}");
    for (const auto& p : sample)
      for (double lam : {2.0, 4.0, 8.0})
        check(r, L.L(lam * p.x, lam * p.y, p.t), std::pow(lam, *g.mu_L) * L.L(p.x, p.y, p.t), p);
    out.conditions.push_back(r);
  } else {
    out.conditions.push_back(fresh("M3-scaling", false));
  }
  return out;
}

}  // namespace tempvar
