#include "tempvar/noether.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tempvar/error.hpp"
#include "tempvar/expression.hpp"
#include "tempvar/variational.hpp"

namespace tempvar {
namespace {

GridFunction along(const Trajectory& u, const std::function<double(double, double, double)>& f) {
  GridFunction out(u.u.params(), u.u.intervals());
  for (std::size_t i = 0; i < u.u.size(); ++i) {
    out[i] = f(u.u[i], u.caputo[i], u.u.node(i));
    if (!std::isfinite(out[i])) throw NumericalError("non-finite value along trajectory");
  }
  return out;
}

GridFunction generator(const SymmetrySpec& S, const Trajectory& u) {
  return along(u, [&S](double x, double, double t) { return S.eta(x, t); });
}

void summarize(NoetherReport& r) {
  const std::size_t n = r.C_values.intervals();
  // Two nodes at each end are dropped; tiny grids keep at least one node.
  r.first = n >= 6 ? 2 : 1;
  r.last = n >= 6 ? n - 2 : n - 1;
  if (r.last < r.first) r.last = r.first;
  double sum = 0.0;
  for (std::size_t i = r.first; i <= r.last; ++i) sum += r.C_values[i];
  r.mean = sum / static_cast<double>(r.last - r.first + 1);
  r.max_deviation = 0.0;
  for (std::size_t i = r.first; i <= r.last; ++i) r.max_deviation = std::max(r.max_deviation, std::abs(r.C_values[i] - r.mean));
  r.relative_drift = r.max_deviation / (std::abs(r.mean) + 1e-300);
}

double max_entry_gap(const GridFunction& x, const GridFunction& y) {
  double g = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) g = std::max(g, std::abs(x[i] - y[i]));
  return g;
}

}  // namespace

SymmetrySpec::SymmetrySpec(std::string name, Xi xi, Eta eta, double t_lo, double t_hi)
    : name_(std::move(name)), xi_(std::move(xi)), eta_(std::move(eta)) {
  SampleBox box;
  box.t_lo = t_lo;
  box.t_hi = t_hi;
  box.count = 1000;
  constexpr double h = 1e-6;
  for (const auto& p : halton_sample(box)) {
    const double x0 = xi_(0.0, p.x, p.t);
    if (std::abs(x0 - p.x) > 1e-12 * (1.0 + std::abs(p.x)))
      throw DomainError("symmetry '" + name_ + "': xi(0, x, t) != x");
    const double fd = (xi_(h, p.x, p.t) - xi_(-h, p.x, p.t)) / (2.0 * h);
    const double e = eta_(p.x, p.t);
    if (!(std::abs(fd - e) <= 1e-5 * std::max(1.0, std::abs(e))))
      throw DomainError("symmetry '" + name_ + "': eta does not match dxi/ds at s = 0");
  }
}

bool is_catalog_symmetry(const std::string& name) {
  return name == "translation" || name == "tempered-translation" || name == "scaling";
}

SymmetrySpec symmetry_catalog(const std::string& name, const TemperedParams& params) {
  const double a = params.a, b = params.b, sigma = params.sigma;
  if (name == "translation")
    return SymmetrySpec(name, [](double s, double x, double) { return x + s; }, [](double, double) { return 1.0; }, a, b);
  if (name == "tempered-translation")
    return SymmetrySpec(
        name, [sigma](double s, double x, double t) { return x + s * std::exp(-sigma * t); },
        [sigma](double, double t) { return std::exp(-sigma * t); }, a, b);
  if (name == "scaling")
    return SymmetrySpec(name, [](double s, double x, double) { return x * std::exp(s); }, [](double x, double) { return x; }, a, b);
  throw std::invalid_argument("unknown symmetry '" + name + "'");
}

SymmetrySpec symmetry_from_expressions(const std::string& xi, const std::string& eta, const TemperedParams& params) {
  const Expression X = Expression::parse(xi, {"s", "x", "t"});
  const Expression E = Expression::parse(eta, {"x", "t"});
  return SymmetrySpec(
      xi, [X](double s, double x, double t) { return X({s, x, t}); }, [E](double x, double t) { return E({x, t}); },
      params.a, params.b);
}

InvarianceReport check_invariance(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u,
                                  const std::vector<double>& s_values) {
  InvarianceReport r;
  r.base_value = evaluate(L, u);
  r.s_values = s_values;
  for (double s : s_values) {
    if (!std::isfinite(s)) throw DomainError("check_invariance: non-finite s");
    GridFunction w(u.u.params(), u.u.intervals());
    for (std::size_t i = 0; i < w.size(); ++i) {
      w[i] = S.xi(s, u.u[i], u.u.node(i));
      if (!std::isfinite(w[i])) throw NumericalError("check_invariance: non-finite transformed trajectory");
    }
    const double d = std::abs(r.base_value - evaluate(L, Trajectory(std::move(w))));
    r.deviations.push_back(d);
    r.max_deviation = std::max(r.max_deviation, d);
  }
  return r;
}

double necessary_condition_residual(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u) {
  const GridFunction ly = along(u, L.Ly);
  const GridFunction eta = generator(S, u);
  const GridFunction d_eta = left_caputo_derivative(eta);
  const RlDerivative d_ly = right_rl_derivative(ly);
  const std::size_t n = u.u.intervals();
  std::vector<double> r(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) r[i] = ly[i] * d_eta[i] - eta[i] * d_ly.value[i];
  return node_range_l2(r, u.u.step(), 1, n - 1);
}

NoetherReport noether_general(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u) {
  const double order = 1.0 - u.u.params().alpha;
  const GridFunction ly = along(u, L.Ly);
  const GridFunction eta = generator(S, u);
  const GridFunction P = left_tempered_integral(eta, order, ZeroOrder::identity);
  const GridFunction Q = right_tempered_integral(ly, order, ZeroOrder::identity);
  GridFunction C(u.u.params(), u.u.intervals());
  for (std::size_t i = 0; i < C.size(); ++i) C[i] = ly[i] * P[i] + eta[i] * Q[i];
  NoetherReport r{std::move(C)};
  summarize(r);
  return r;
}

NoetherReport noether_constant(const LagrangianSpec& L, const SymmetrySpec& S, const Trajectory& u) {
  const auto& p = u.u.params();
  if (p.alpha != 1.0 || p.sigma != 0.0) return noether_general(L, S, u);
  const GridFunction ly = along(u, L.Ly);
  const GridFunction eta = generator(S, u);
  GridFunction C(p, u.u.intervals());
  for (std::size_t i = 0; i < C.size(); ++i) C[i] = ly[i] * eta[i];
  NoetherReport r{std::move(C)};
  r.classical = true;
  summarize(r);
  return r;
}

MomentumReport corollary_momentum(const LagrangianSpec& L, const Trajectory& u) {
  if (!L.x_independent) throw DomainError("corollary_momentum: Lagrangian not declared independent of x");
  for (std::size_t i = 0; i < u.u.size(); ++i) {
    if (std::abs(L.Lx(u.u[i], u.caputo[i], u.u.node(i))) > 1e-8)
      throw DomainError("corollary_momentum: Lx is nonzero along the trajectory");
  }
  const auto& p = u.u.params();
  const SymmetrySpec S = symmetry_catalog("tempered-translation", p);
  MomentumReport r{noether_constant(L, S, u)};

  const std::size_t n = u.u.intervals();
  const std::size_t first = r.noether.first, last = r.noether.last;
  if (r.noether.classical) {
    // Both order-zero integrals are the identity: the limits are Ly eta itself.
    r.right_limit = r.noether.C_values[n];
    r.left_limit = r.noether.C_values[0];
  } else {
    const double order = 1.0 - p.alpha;
    const GridFunction ly = along(u, L.Ly);
    const GridFunction eta = generator(S, u);
    const GridFunction P = left_tempered_integral(eta, order, ZeroOrder::identity);
    const GridFunction Q = right_tempered_integral(ly, order, ZeroOrder::identity);
    auto right = [&](std::size_t i) { return ly[i] * P[i]; };
    auto left = [&](std::size_t i) { return eta[i] * Q[i]; };
    // Linear extrapolation from the nodes kept by the interior statistics.
    const double lo = last > first ? static_cast<double>(n - last) : 0.0;
    r.right_limit = right(last) + (last > first ? (right(last) - right(last - 1)) * lo : 0.0);
    const double fo = last > first ? static_cast<double>(first) : 0.0;
    r.left_limit = left(first) - (last > first ? (left(first + 1) - left(first)) * fo : 0.0);
  }
  r.boundary_value = r.right_limit - r.left_limit;
  r.gap = std::abs(r.boundary_value - r.noether.mean);
  r.relative_gap = r.gap / (std::abs(r.noether.mean) + 1e-300);
  return r;
}

CoherenceReport coherence_diagram(const LagrangianSpec& L, const GridFunction& u) {
  const TemperedParams base = u.params();
  const std::array<std::pair<double, double>, 3> modes{{{base.alpha, base.sigma}, {base.alpha, 0.0}, {1.0, 0.0}}};
  CoherenceReport out;
  for (std::size_t k = 0; k < 3; ++k) {
    const TemperedParams p = base.with(modes[k].first, modes[k].second);
    const Trajectory traj(u.relabel(p));
    out.modes.push_back({p.alpha, p.sigma, noether_general(L, symmetry_catalog("tempered-translation", p), traj)});
  }

  // Specializations: the direct evaluations the diagram's arrows point to.
  {
    const TemperedParams p = base.with(base.alpha, 0.0);
    const Trajectory traj(u.relabel(p));
    const NoetherReport direct = noether_constant(L, symmetry_catalog("tempered-translation", p), traj);
    out.sigma_zero_gap = direct.classical ? 0.0 : max_entry_gap(out.modes[1].report.C_values, direct.C_values);
  }
  {
    const TemperedParams p = base.with(1.0, 0.0);
    const Trajectory traj(u.relabel(p));
    const SymmetrySpec S = symmetry_catalog("tempered-translation", p);
    out.classical_gap = max_entry_gap(out.modes[2].report.C_values, noether_general(L, S, traj).C_values);

    const NoetherReport classical = noether_constant(L, S, traj);
    double ratio_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < classical.C_values.size(); ++i) {
      if (std::abs(classical.C_values[i]) > 1e-12) {
        ratio_sum += out.modes[2].report.C_values[i] / classical.C_values[i];
        ++count;
      }
    }
    out.classical_ratio = count ? ratio_sum / static_cast<double>(count) : 0.0;
  }
  return out;
}

}  // namespace tempvar
