#include "tempvar/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "tempvar/error.hpp"
#include "tempvar/specfun.hpp"

namespace tempvar {
namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string("non-finite ") + what);
}

// Ly sampled along (u, CD u, t) as a grid function.
GridFunction momentum(const LagrangianSpec& L, const Trajectory& u) {
  GridFunction out(u.u.params(), u.u.intervals());
  for (std::size_t i = 0; i < u.u.size(); ++i) {
    out[i] = L.Ly(u.u[i], u.caputo[i], u.u.node(i));
    require_finite(out[i], "Ly");
  }
  return out;
}

double tolerance_for(double lhs, double rhs) { return 1e-12 * (1.0 + std::abs(lhs) + std::abs(rhs)); }

// Records lhs <= rhs at point p.
void record(ConditionReport& r, double lhs, double rhs, const SamplePoint& p) {
  const double excess = lhs - rhs;
  if (excess > tolerance_for(lhs, rhs) || !std::isfinite(excess)) {
    ++r.violations;
    r.pass = false;
    if (!r.witness || excess > r.worst_excess) {
      r.worst_excess = excess;
      r.witness = p;
    }
  }
}

bool in_range(const std::optional<double>& v, double lo, bool lo_open, double hi, bool hi_open) {
  if (!v) return false;
  const double x = *v;
  const bool above = lo_open ? x > lo : x >= lo;
  const bool below = hi_open ? x < hi : x <= hi;
  return above && below;
}

ConditionReport undeclared(const std::string& name) {
  ConditionReport r;
  r.name = name;
  r.note = "metadata not declared; skipped";
  return r;
}

ConditionReport bad_metadata(const std::string& name, const std::string& why) {
  ConditionReport r;
  r.name = name;
  r.checked = true;
  r.pass = false;
  r.note = why;
  return r;
}

}  // namespace

double evaluate(const LagrangianSpec& L, const Trajectory& u) {
  const auto w = trapezoid_weights(u.u.intervals(), u.u.step());
  double sum = 0.0;
  for (std::size_t i = 0; i < u.u.size(); ++i) {
    const double v = L.L(u.u[i], u.caputo[i], u.u.node(i));
    require_finite(v, "Lagrangian value");
    sum += w[i] * v;
  }
  return sum;
}

double evaluate(const LagrangianSpec& L, const SpaceElement& u) { return evaluate(L, u.trajectory()); }

double gateaux_derivative(const LagrangianSpec& L, const SpaceElement& u, const SpaceElement& v) {
  if (u.space() != v.space() && !u.values().same_grid(v.values())) throw GridMismatch("gateaux_derivative: grids differ");
  const auto& w = u.space()->weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.values().size(); ++i) {
    const double x = u.values()[i], y = u.caputo()[i], t = u.values().node(i);
    const double lx = L.Lx(x, y, t), ly = L.Ly(x, y, t);
    require_finite(lx, "Lx");
    require_finite(ly, "Ly");
    sum += w[i] * (lx * v.values()[i] + ly * v.caputo()[i]);
  }
  return sum;
}

Eigen::VectorXd gateaux_vector(const LagrangianSpec& L, const SpaceElement& u) {
  const auto& space = *u.space();
  const std::size_t n = space.intervals();
  const auto& w = space.weights();
  Eigen::VectorXd wlx(n + 1), wly(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = u.values()[i], y = u.caputo()[i], t = u.values().node(i);
    const double lx = L.Lx(x, y, t), ly = L.Ly(x, y, t);
    require_finite(lx, "Lx");
    require_finite(ly, "Ly");
    wlx[static_cast<Eigen::Index>(i)] = w[i] * lx;
    wly[static_cast<Eigen::Index>(i)] = w[i] * ly;
  }
  // phi_k is 1 at node k only; its derivative is column k-1 of B.
  Eigen::VectorXd out = space.basis().derivative_matrix().transpose() * wly;
  out += wlx.segment(1, static_cast<Eigen::Index>(n - 1));
  return out;
}

Gradient gradient_with_norm(const LagrangianSpec& L, const SpaceElement& u) {
  const Eigen::VectorXd dj = gateaux_vector(L, u);
  const Eigen::VectorXd c = u.space()->solve_gram(dj);
  if (!c.allFinite()) throw NumericalError("gradient: Gram solve produced non-finite values");
  const double sq = std::max(0.0, dj.dot(c));
  return {SpaceElement::from_coefficients(u.space(), c), std::sqrt(sq)};
}

SpaceElement gradient(const LagrangianSpec& L, const SpaceElement& u) { return gradient_with_norm(L, u).direction; }

double el_residual(const LagrangianSpec& L, const Trajectory& u) {
  const GridFunction ly = momentum(L, u);
  const RlDerivative d = right_rl_derivative(ly);
  const std::size_t n = u.u.intervals();
  std::vector<double> r(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    r[i] = L.Lx(u.u[i], u.caputo[i], u.u.node(i)) + d.value[i];
  }
  return node_range_l2(r, u.u.step(), 1, n - 1);
}

double el_residual(const LagrangianSpec& L, const SpaceElement& u) { return el_residual(L, u.trajectory()); }

bool HypothesisReport::all_pass() const {
  for (const auto& c : conditions)
    if (c.checked && !c.pass) return false;
  return true;
}

const ConditionReport& HypothesisReport::at(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw std::out_of_range("no condition named " + name);
}

HypothesisReport validate_hypotheses(const LagrangianSpec& L, const std::vector<SamplePoint>& sample) {
  const auto& g = L.growth;
  HypothesisReport out;

  // (L1). The bound is read with |y|^d1, in line with (L2) and (L3).
  if (g.d1 && g.r1 && g.s1) {
    if (!in_range(g.d1, 0.0, true, 2.0, false)) {
      out.conditions.push_back(bad_metadata("L1", "d1 outside (0, 2]"));
    } else {
      ConditionReport r;
      r.name = "L1";
      r.checked = true;
      r.note = "bound read as r1|y|^d1 + s1 (the source writes |t|^d1)";
      for (const auto& p : sample)
        record(r, std::abs(L.L(p.x, p.y, p.t) - L.L(p.x, 0.0, p.t)), *g.r1 * std::pow(std::abs(p.y), *g.d1) + *g.s1, p);
      out.conditions.push_back(r);
    }
  } else {
    out.conditions.push_back(undeclared("L1"));
  }

  if (g.d2 && g.r2 && g.s2) {
    if (!in_range(g.d2, 0.0, true, 2.0, false)) {
      out.conditions.push_back(bad_metadata("L2", "d2 outside (0, 2]"));
    } else {
      ConditionReport r;
      r.name = "L2";
      r.checked = true;
      for (const auto& p : sample)
        record(r, std::abs(L.Lx(p.x, p.y, p.t)), *g.r2 * std::pow(std::abs(p.y), *g.d2) + *g.s2, p);
      out.conditions.push_back(r);
    }
  } else {
    out.conditions.push_back(undeclared("L2"));
  }

  if (g.d3 && g.r3 && g.s3) {
    if (!in_range(g.d3, 0.0, true, 1.0, false)) {
      out.conditions.push_back(bad_metadata("L3", "d3 outside (0, 1]"));
    } else {
      ConditionReport r;
      r.name = "L3";
      r.checked = true;
      for (const auto& p : sample)
        record(r, std::abs(L.Ly(p.x, p.y, p.t)), *g.r3 * std::pow(std::abs(p.y), *g.d3) + *g.s3, p);
      out.conditions.push_back(r);
    }
  } else {
    out.conditions.push_back(undeclared("L3"));
  }

  if (g.zeta && g.d4 && g.c2 && g.c3) {
    const double c1 = g.c1.value_or(*g.zeta);
    if (!(*g.zeta > 0.0)) {
      out.conditions.push_back(bad_metadata("L4", "zeta must be positive"));
    } else if (!in_range(g.d4, 1.0, false, 2.0, true)) {
      out.conditions.push_back(bad_metadata("L4", "d4 outside [1, 2)"));
    } else if (c1 < *g.zeta) {
      out.conditions.push_back(bad_metadata("L4", "c1 below zeta"));
    } else {
      ConditionReport r;
      r.name = "L4";
      r.checked = true;
      for (const auto& p : sample)
        record(r, c1 * p.y * p.y + *g.c2 * std::pow(std::abs(p.x), *g.d4) + *g.c3, L.L(p.x, p.y, p.t), p);
      out.conditions.push_back(r);
    }
  } else {
    out.conditions.push_back(undeclared("L4"));
  }

  if (g.convex) {
    ConditionReport r;
    r.name = "L5";
    r.checked = true;
    r.note = "midpoint convexity in (x, y) on consecutive sample pairs";
    for (std::size_t k = 0; k + 1 < sample.size(); ++k) {
      const auto& p = sample[k];
      const auto& q = sample[k + 1];
      const double t = p.t;
      const SamplePoint m{0.5 * (p.x + q.x), 0.5 * (p.y + q.y), t};
      record(r, L.L(m.x, m.y, t), 0.5 * (L.L(p.x, p.y, t) + L.L(q.x, q.y, t)), m);
    }
    out.conditions.push_back(r);
  } else {
    out.conditions.push_back(undeclared("L5"));
  }
  return out;
}

CoercivityBound coercivity_bound(const LagrangianSpec& L, const SpaceElement& u, double tol) {
  const auto& g = L.growth;
  if (!g.zeta || !g.d4 || !g.c2 || !g.c3) throw DomainError("coercivity_bound needs zeta, d4, c2 and c3");
  const auto& p = u.space()->params();
  const double len = p.length();
  const double K = tempered_kernel_mass(p.alpha, p.sigma, len);
  const double du = caputo_l2_norm(u);
  CoercivityBound out;
  out.lower = *g.zeta * du * du - std::abs(*g.c2) * std::pow(len, 1.0 - *g.d4 / 2.0) * std::pow(K, *g.d4) * std::pow(du, *g.d4) -
              len * std::abs(*g.c3);
  out.actual = evaluate(L, u);
  out.holds = out.actual >= out.lower - tol * (1.0 + std::abs(out.lower));
  return out;
}

SolveReport minimize_direct(const LagrangianSpec& L, const SpaceElement& u0, double tol, std::size_t max_iter) {
  constexpr double armijo = 1e-4;
  SpaceElement u = u0;
  double value = evaluate(L, u);
  Gradient g = gradient_with_norm(L, u);
  SolveReport report{u, value, g.norm, 0.0, 0, false, "", {}};
  report.trace.push_back({0, value, g.norm});

  std::size_t it = 0;
  bool stalled = false;
  while (g.norm > tol && it < max_iter) {
    double step = 1.0;
    const double slope = g.norm * g.norm;
    std::optional<SpaceElement> next;
    double next_value = 0.0;
    while (step > 1e-16) {
      SpaceElement cand = u.plus_scaled(-step, g.direction);
      const double v = evaluate(L, cand);
      if (v <= value - armijo * step * slope) {
        next.emplace(std::move(cand));
        next_value = v;
        break;
      }
      step *= 0.5;
    }
    if (!next) {
      stalled = true;
      break;
    }
    u = std::move(*next);
    value = next_value;
    g = gradient_with_norm(L, u);
    ++it;
    report.trace.push_back({it, value, g.norm});
  }

  report.extremal = u;
  report.value = value;
  report.grad_norm = g.norm;
  report.iterations = it;
  report.converged = g.norm <= tol;
  report.el_residual = el_residual(L, u);
  if (report.converged)
    report.message = "converged";
  else if (stalled)
    report.message = "line search stalled";
  else
    report.message = "max_iter reached";
  return report;
}

}  // namespace tempvar
