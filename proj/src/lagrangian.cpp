#include "tempvar/lagrangian.hpp"

#include <cmath>
#include <stdexcept>

#include "tempvar/expression.hpp"

namespace tempvar {
namespace {

double radical_inverse(std::size_t index, std::size_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

LagrangianSpec dirichlet() {
  LagrangianSpec s;
  s.name = "dirichlet";
  s.L = [](double, double y, double) { return 0.5 * y * y; };
  s.Lx = [](double, double, double) { return 0.0; };
  s.Ly = [](double, double y, double) { return y; };
  s.x_independent = true;
  auto& g = s.growth;
  g.d1 = 2.0, g.r1 = 0.5, g.s1 = 0.0;
  g.d2 = 1.0, g.r2 = 0.0, g.s2 = 0.0;
  g.d3 = 1.0, g.r3 = 1.0, g.s3 = 0.0;
  g.zeta = 0.5, g.d4 = 1.0, g.c1 = 0.5, g.c2 = 0.0, g.c3 = 0.0;
  g.convex = true;
  g.Lambda = 0.5;
  return s;
}

LagrangianSpec linear_forced(const GridFunction& f) {
  LagrangianSpec s;
  s.name = "linear-forced";
  s.L = [f](double x, double y, double t) { return 0.5 * y * y + 0.5 * x * x - f.interpolate(t) * x; };
  s.Lx = [f](double x, double, double t) { return x - f.interpolate(t); };
  s.Ly = [](double, double y, double) { return y; };
  auto& g = s.growth;
  // 1/2 x^2 - f x >= -|f| |x| bounds the x-part from below with d4 = 1.
  g.zeta = 0.5, g.d4 = 1.0, g.c1 = 0.5, g.c2 = -f.max_abs(), g.c3 = 0.0;
  g.d3 = 1.0, g.r3 = 1.0, g.s3 = 0.0;
  g.convex = true;
  return s;
}

LagrangianSpec double_well() {
  LagrangianSpec s;
  s.name = "double-well";
  s.L = [](double x, double y, double) {
    const double w = x * x - 1.0;
    return 0.5 * y * y + 0.25 * w * w;
  };
  s.Lx = [](double x, double, double) { return x * (x * x - 1.0); };
  s.Ly = [](double, double y, double) { return y; };
  auto& g = s.growth;
  g.zeta = 0.5, g.d4 = 1.0, g.c1 = 0.5, g.c2 = 0.0, g.c3 = 0.0;
  g.d3 = 1.0, g.r3 = 1.0, g.s3 = 0.0;
  return s;
}

LagrangianSpec power(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("power lagrangian needs p > 1");
  LagrangianSpec s;
  s.name = "power";
  s.L = [p](double x, double y, double) { return 0.5 * y * y - std::pow(std::abs(x), p) / p; };
  s.Lx = [p](double x, double, double) { return -std::pow(std::abs(x), p - 1.0) * (x < 0.0 ? -1.0 : 1.0); };
  s.Ly = [](double, double y, double) { return y; };
  s.growth.d3 = 1.0, s.growth.r3 = 1.0, s.growth.s3 = 0.0;
  s.growth.Lambda = 0.5;
  return s;
}

}  // namespace

SampleBox default_box(const TemperedParams& params, std::size_t count) {
  SampleBox box;
  box.t_lo = params.a;
  box.t_hi = params.b;
  box.count = count;
  return box;
}

std::vector<SamplePoint> halton_sample(const SampleBox& box) {
  std::vector<SamplePoint> pts(box.count);
  for (std::size_t i = 0; i < box.count; ++i) {
    // Index 0 of every Halton sequence is the origin corner; start at 1.
    const std::size_t k = i + 1;
    pts[i].x = box.x_lo + (box.x_hi - box.x_lo) * radical_inverse(k, 2);
    pts[i].y = box.y_lo + (box.y_hi - box.y_lo) * radical_inverse(k, 3);
    pts[i].t = box.t_lo + (box.t_hi - box.t_lo) * radical_inverse(k, 5);
  }
  return pts;
}

bool is_catalog_lagrangian(const std::string& name) {
  return name == "dirichlet" || name == "linear-forced" || name == "double-well" || name == "power";
}

LagrangianSpec lagrangian_catalog(const std::string& name, const std::optional<GridFunction>& forcing, double p) {
  if (name == "dirichlet") return dirichlet();
  if (name == "linear-forced") {
    if (!forcing) throw std::invalid_argument("linear-forced lagrangian needs a forcing term f");
    return linear_forced(*forcing);
  }
  if (name == "double-well") return double_well();
  if (name == "power") return power(p);
  throw std::invalid_argument("unknown lagrangian '" + name + "'");
}

LagrangianSpec forced_dirichlet(const GridFunction& f) {
  LagrangianSpec s;
  s.name = "forced-dirichlet";
  s.L = [f](double x, double y, double t) { return 0.5 * y * y - f.interpolate(t) * x; };
  s.Lx = [f](double, double, double t) { return -f.interpolate(t); };
  s.Ly = [](double, double y, double) { return y; };
  s.growth.convex = true;
  return s;
}

LagrangianSpec lagrangian_from_expression(const std::string& text) {
  const Expression L = Expression::parse(text, {"x", "y", "t"});
  const Expression Lx = L.derivative("x");
  const Expression Ly = L.derivative("y");
  LagrangianSpec s;
  s.name = text;
  s.L = [L](double x, double y, double t) { return L({x, y, t}); };
  s.Lx = [Lx](double x, double y, double t) { return Lx({x, y, t}); };
  s.Ly = [Ly](double x, double y, double t) { return Ly({x, y, t}); };
  return s;
}

PartialsCheck check_partials(const LagrangianSpec& spec, const std::vector<SamplePoint>& sample) {
  constexpr double h = 1e-6;
  PartialsCheck out;
  for (const auto& p : sample) {
    const double fx = (spec.L(p.x + h, p.y, p.t) - spec.L(p.x - h, p.y, p.t)) / (2.0 * h);
    const double fy = (spec.L(p.x, p.y + h, p.t) - spec.L(p.x, p.y - h, p.t)) / (2.0 * h);
    const double lx = spec.Lx(p.x, p.y, p.t);
    const double ly = spec.Ly(p.x, p.y, p.t);
    const double err = std::max(std::abs(fx - lx) / std::max(1.0, std::abs(lx)),
                                std::abs(fy - ly) / std::max(1.0, std::abs(ly)));
    if (err > out.max_error || !std::isfinite(err)) {
      out.max_error = std::isfinite(err) ? err : INFINITY;
      out.worst = p;
    }
  }
  out.pass = out.max_error <= 1e-5;
  return out;
}

}  // namespace tempvar
