#include "tempvar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "tempvar/bvp.hpp"
#include "tempvar/error.hpp"
#include "tempvar/expression.hpp"
#include "tempvar/io.hpp"
#include "tempvar/mountain_pass.hpp"
#include "tempvar/noether.hpp"
#include "tempvar/variational.hpp"

namespace tempvar::cli {
namespace {

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"ops-verify", Command::ops_verify},       {"ops-table", Command::ops_table},
    {"bvp-solve", Command::bvp_solve},         {"bvp-converge", Command::bvp_converge},
    {"minimize", Command::minimize},           {"noether-check", Command::noether_check},
    {"mountain-pass", Command::mountain_pass}, {"coherence", Command::coherence}};

const std::vector<std::string> kOperators = {"left-integral", "right-integral", "left-caputo",
                                             "right-caputo",  "left-rl",        "right-rl"};

bool needs_space(Command c) {
  return c == Command::bvp_solve || c == Command::bvp_converge || c == Command::minimize ||
         c == Command::mountain_pass || c == Command::noether_check;
}

bool is_file(const std::string& s) {
  std::error_code ec;
  return std::filesystem::is_regular_file(s, ec);
}

// A "function source" is a CSV path or an expression in t.
void check_source(const std::string& flag, const std::string& value) {
  if (is_file(value)) return;
  try {
    (void)Expression::parse(value, {"t"});
  } catch (const std::exception& e) {
    throw UsageError(flag + ": '" + value + "' is neither a readable file nor an expression in t (" + e.what() + ")");
  }
}

GridFunction load_source(const std::string& value, const TemperedParams& params, std::size_t n) {
  if (is_file(value)) {
    GridFunction g = read_csv(value, params);
    if (g.params().a != params.a || g.params().b != params.b)
      throw DomainError(value + ": CSV interval does not match [a, b]");
    return g.relabel(params);
  }
  const Expression e = Expression::parse(value, {"t"});
  return GridFunction::sample(params, n, [&](double t) { return e({t}); });
}

std::function<double(double)> expression_fn(const std::string& text) {
  const Expression e = Expression::parse(text, {"t"});
  return [e](double t) { return e({t}); };
}

std::string default_profile(const TemperedParams& p) {
  return "sin(pi*(t - " + format_double(p.a) + ")/" + format_double(p.length()) + ")";
}

Json config_json(const RunConfig& c) {
  Json j{{"command", to_string(c.command)}, {"params", to_json(c.params)}, {"n", c.n}};
  j["lagrangian"] = c.lagrangian;
  j["p"] = c.p;
  if (!c.xi.empty()) {
    j["xi"] = c.xi;
    j["eta"] = c.eta;
  } else {
    j["symmetry"] = c.symmetry;
  }
  j["f"] = c.f;
  j["u"] = c.u;
  j["exact"] = c.exact;
  j["operator"] = c.op;
  j["order"] = c.order;
  j["knots"] = c.knots;
  j["out"] = c.out;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["seed"] = c.seed;
  return j;
}

LagrangianSpec make_lagrangian(const RunConfig& c) {
  if (is_catalog_lagrangian(c.lagrangian)) {
    std::optional<GridFunction> f;
    if (!c.f.empty()) f = load_source(c.f, c.params, c.n);
    return lagrangian_catalog(c.lagrangian, f, c.p);
  }
  return lagrangian_from_expression(c.lagrangian);
}

SymmetrySpec make_symmetry(const RunConfig& c) {
  if (!c.xi.empty()) return symmetry_from_expressions(c.xi, c.eta, c.params);
  return symmetry_catalog(c.symmetry, c.params);
}

// Interior values only; the endpoints are forced to zero.
SpaceElement to_element(const SpacePtr& space, GridFunction g) {
  g[0] = 0.0;
  g[g.intervals()] = 0.0;
  return SpaceElement(space, std::move(g));
}

struct Outcome {
  Json result;
  std::string summary;
  bool ok = true;
};

Outcome ops_verify(const RunConfig& c) {
  const auto& p = c.params;
  const double pi = std::numbers::pi;
  const GridFunction u = GridFunction::sample(p, c.n, [&](double t) { return std::sin(pi * (t - p.a) / p.length()); });
  const GridFunction v = GridFunction::sample(p, c.n, [&](double t) {
    const double s = (t - p.a) / p.length();
    return s * s * (1.0 - s);
  });
  const CompositionReport comp = verify_composition(u);
  const IntegrationByPartsReport ibp = verify_integration_by_parts(u, v);
  const GridFunction expo = GridFunction::sample(p, c.n, [&](double t) { return std::exp(-p.sigma * (t - p.a)); });
  const double annihilation = left_caputo_derivative(expo).max_abs();

  const bool ok = comp.max() <= 5e-2 && ibp.derivative_relative <= 1e-2 && ibp.integral_relative <= 1e-2 && annihilation <= 1e-12;
  Outcome o;
  o.result = Json{{"composition", to_json(comp)},
                  {"integration_by_parts", to_json(ibp)},
                  {"exponential_annihilation", annihilation},
                  {"thresholds", {{"composition", 5e-2}, {"integration_by_parts_relative", 1e-2}, {"annihilation", 1e-12}}},
                  {"pass", ok}};
  o.ok = ok;
  o.summary = std::string("ops-verify: ") + (ok ? "all identities within tolerance" : "identity residual above tolerance") +
              " (composition " + format_double(comp.max()) + ")";
  return o;
}

OperatorKind parse_operator(const std::string& op, double order) {
  OperatorKind k;
  k.side = op.rfind("left", 0) == 0 ? Side::left : Side::right;
  if (op.find("integral") != std::string::npos) k.family = Family::rl_integral;
  else if (op.find("caputo") != std::string::npos) k.family = Family::caputo_derivative;
  else k.family = Family::rl_derivative;
  k.order = order;
  return k;
}

Outcome ops_table(const RunConfig& c, std::vector<std::string>& written) {
  const OperatorMatrix m(parse_operator(c.op, c.order), c.params, c.n);
  Outcome o;
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot open " + c.out);
    written.push_back(c.out);
    write_matrix_csv(f, m);
  }
  o.result = Json{{"operator", c.op},
                  {"rows", m.entries().rows()},
                  {"cols", m.entries().cols()},
                  {"singular_rows", m.singular_rows()},
                  {"max_abs_entry", m.entries().cwiseAbs().maxCoeff()}};
  o.summary = "ops-table: " + c.op + " " + std::to_string(m.entries().rows()) + "x" + std::to_string(m.entries().cols()) +
              (c.out.empty() ? "" : " written to " + c.out);
  return o;
}

Outcome bvp_solve(const RunConfig& c, std::vector<std::string>& written) {
  const GridFunction f = load_source(c.f, c.params, c.n);
  const BilinearSystem sys = assemble(c.params, c.n, f);
  const SpaceElement u = solve(sys);
  if (!c.out.empty()) {
    written.push_back(c.out);
    write_csv(c.out, u.values());
  }
  Outcome o;
  o.result = Json{{"galerkin_residual", galerkin_residual(sys, u)},
                  {"energy_gap", energy_gap(sys, u)},
                  {"norm", norm(u)},
                  {"max_abs", u.values().max_abs()},
                  {"solution", to_json(u.values())}};
  o.summary = "bvp-solve: n = " + std::to_string(c.n) + ", |u_h| = " + format_double(norm(u));
  return o;
}

Outcome bvp_converge(const RunConfig& c) {
  std::vector<std::size_t> ns;
  for (std::size_t n = 32; n <= c.n; n *= 2) ns.push_back(n);
  if (ns.empty()) throw DomainError("bvp-converge needs --n >= 32");
  const std::string exact = c.exact.empty() ? default_profile(c.params) : c.exact;
  const auto study = convergence_study(c.params, expression_fn(exact), ns);
  Json rows = Json::array();
  bool monotone = true;
  for (std::size_t i = 0; i < study.size(); ++i) {
    rows.push_back(to_json(study[i]));
    if (i > 0 && !(study[i].l2_error < study[i - 1].l2_error)) monotone = false;
  }
  Outcome o;
  o.result = Json{{"exact", exact}, {"study", rows}, {"monotone", monotone}};
  o.summary = "bvp-converge: final l2_error " + format_double(study.back().l2_error) + (monotone ? ", monotone" : ", NOT monotone");
  return o;
}

Outcome minimize(const RunConfig& c, std::vector<std::string>& written) {
  const LagrangianSpec L = make_lagrangian(c);
  const SpacePtr space = Space::create(c.params, c.n);
  std::mt19937_64 rng(c.seed);
  const SpaceElement u0 = c.u.empty() ? random_smooth_element(space, rng) : to_element(space, load_source(c.u, c.params, c.n));
  const SolveReport r = minimize_direct(L, u0, c.tol, c.max_iter);
  if (!c.out.empty()) {
    written.push_back(c.out);
    write_csv(c.out, r.extremal.values());
  }
  Outcome o;
  o.result = to_json(r, true);
  o.result["hypotheses"] = to_json(validate_hypotheses(L, halton_sample(default_box(c.params))));
  o.ok = r.converged;
  o.summary = "minimize: " + r.message + ", J = " + format_double(r.value) + ", |grad| = " + format_double(r.grad_norm);
  return o;
}

Outcome noether_check(const RunConfig& c) {
  const LagrangianSpec L = make_lagrangian(c);
  const SymmetrySpec S = make_symmetry(c);
  std::optional<Trajectory> traj;
  Json source;
  if (!c.u.empty()) {
    traj.emplace(load_source(c.u, c.params, c.n));
    source = c.u;
  } else {
    const SpacePtr space = Space::create(c.params, c.n);
    std::mt19937_64 rng(c.seed);
    const SolveReport r = minimize_direct(L, random_smooth_element(space, rng), c.tol, c.max_iter);
    traj.emplace(r.extremal.trajectory());
    source = Json{{"minimizer", {{"converged", r.converged}, {"grad_norm", r.grad_norm}, {"iterations", r.iterations}}}};
  }
  const std::vector<double> s_values{-1.0, -0.5, 0.0, 0.5, 1.0};
  Outcome o;
  const NoetherReport nr = noether_constant(L, S, *traj);
  o.result = Json{{"trajectory", source},
                  {"invariance", to_json(check_invariance(L, S, *traj, s_values))},
                  {"necessary_condition_residual", necessary_condition_residual(L, S, *traj)},
                  {"el_residual", el_residual(L, *traj)},
                  {"noether", to_json(nr)}};
  if (L.x_independent) o.result["corollary"] = to_json(corollary_momentum(L, *traj));
  o.summary = "noether-check: mean C = " + format_double(nr.mean) + ", relative drift " + format_double(nr.relative_drift);
  return o;
}

Outcome mountain_pass(const RunConfig& c, std::vector<std::string>& written) {
  const LagrangianSpec L = make_lagrangian(c);
  std::mt19937_64 rng(c.seed);
  const GeometryReport g = verify_geometry(L, c.params, c.n, rng);
  Outcome o;
  o.result = Json{{"geometry", to_json(g)}, {"hypotheses", to_json(validate_mp_hypotheses(L, halton_sample(default_box(c.params))))}};
  if (!g.found) {
    o.ok = false;
    o.summary = "mountain-pass: " + g.message;
    return o;
  }
  MountainPassOptions opt;
  opt.knots = c.knots;
  opt.tol = c.tol;
  opt.max_iter = c.max_iter;
  opt.seed = c.seed;
  const MountainPassReport r = find_critical_point(L, *g.e, opt);
  if (!c.out.empty()) {
    written.push_back(c.out);
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot open " + c.out);
    f << "knot,t,value\n";
    for (std::size_t k = 0; k < r.path.knots.size(); ++k) {
      const GridFunction& v = r.path.knots[k].values();
      for (std::size_t i = 0; i < v.size(); ++i) f << k << ',' << format_double(v.node(i)) << ',' << format_double(v[i]) << '\n';
    }
  }
  o.result["mountain_pass"] = to_json(r);
  o.ok = r.solve.converged;
  o.summary = "mountain-pass: " + r.solve.message + ", critical value " + format_double(r.solve.value) + ", |grad| = " +
              format_double(r.solve.grad_norm);
  return o;
}

Outcome coherence(const RunConfig& c) {
  const LagrangianSpec L = make_lagrangian(c);
  const std::string src = c.u.empty() ? default_profile(c.params) : c.u;
  const CoherenceReport r = coherence_diagram(L, load_source(src, c.params, c.n));
  Outcome o;
  o.result = to_json(r);
  o.result["trajectory"] = src;
  o.ok = r.coherent();
  o.summary = std::string("coherence: ") + (o.ok ? "specializations agree" : "specializations differ") +
              ", classical ratio " + format_double(r.classical_ratio);
  return o;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "?";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"tempered fractional variational toolkit", "tempvar"};
  RunConfig c;
  std::string command;
  app.add_option("command", command, "ops-verify | ops-table | bvp-solve | bvp-converge | minimize | noether-check | mountain-pass | coherence")
      ->required();
  app.add_option("--alpha", c.params.alpha, "fractional order");
  app.add_option("--sigma", c.params.sigma, "tempering parameter");
  app.add_option("--a", c.params.a, "left endpoint");
  app.add_option("--b", c.params.b, "right endpoint");
  app.add_option("--n", c.n, "grid intervals");
  app.add_option("--lagrangian", c.lagrangian, "catalog name or expression in x, y, t");
  app.add_option("--symmetry", c.symmetry, "translation | tempered-translation | scaling");
  app.add_option("--xi", c.xi, "custom symmetry xi(s, x, t)");
  app.add_option("--eta", c.eta, "custom generator eta(x, t)");
  app.add_option("--f", c.f, "forcing: CSV path or expression in t");
  app.add_option("--u", c.u, "trajectory or start: CSV path or expression in t");
  app.add_option("--exact", c.exact, "manufactured solution for bvp-converge");
  app.add_option("--operator", c.op, "operator for ops-table");
  app.add_option("--order", c.order, "integral order for ops-table");
  app.add_option("--p", c.p, "exponent of the power Lagrangian");
  app.add_option("--knots", c.knots, "mountain-pass path knots");
  app.add_option("--out", c.out, "CSV output path");
  app.add_option("--json", c.json, "JSON output path (default stdout)");
  app.add_option("--tol", c.tol, "solver tolerance (default 1e-8, mountain-pass 1e-4)");
  app.add_option("--max-iter", c.max_iter, "iteration cap");
  app.add_option("--seed", c.seed, "random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto it = std::find_if(kCommands.begin(), kCommands.end(), [&](const auto& kv) { return kv.first == command; });
  if (it == kCommands.end()) throw UsageError("unknown command '" + command + "'");
  c.command = it->second;

  try {
    if (needs_space(c.command))
      c.params.validate_embedding();
    else
      c.params.validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string("--alpha/--sigma/--a/--b: ") + e.what());
  }
  if (c.n < 4) throw UsageError("--n: need at least 4 intervals");
  if (!(c.tol > 0.0)) throw UsageError("--tol: must be positive");
  // The string method stops at the peak-gradient level of the acceptance runs.
  if (c.command == Command::mountain_pass && !app.count("--tol")) c.tol = 1e-4;
  if (c.knots < 8) throw UsageError("--knots: need at least 8");
  if (std::find(kOperators.begin(), kOperators.end(), c.op) == kOperators.end())
    throw UsageError("--operator: unknown operator '" + c.op + "'");
  if (!(c.order > 0.0 && c.order <= 1.0)) throw UsageError("--order: must lie in (0, 1]");

  const bool uses_lagrangian = c.command == Command::minimize || c.command == Command::noether_check ||
                               c.command == Command::mountain_pass || c.command == Command::coherence;
  if (uses_lagrangian) {
    if (c.command == Command::mountain_pass && c.lagrangian == "dirichlet" && !app.count("--lagrangian")) c.lagrangian = "power";
    if (!is_catalog_lagrangian(c.lagrangian)) {
      try {
        (void)Expression::parse(c.lagrangian, {"x", "y", "t"});
      } catch (const std::exception& e) {
        throw UsageError("--lagrangian: '" + c.lagrangian + "' is not a catalog name or a valid expression (" + e.what() + ")");
      }
    }
    if (c.lagrangian == "linear-forced" && c.f.empty()) throw UsageError("--f: required by the linear-forced Lagrangian");
    if (c.lagrangian == "power" && !(c.p > 1.0)) throw UsageError("--p: must exceed 1");
  }
  if (c.command == Command::noether_check) {
    if (c.xi.empty() != c.eta.empty()) throw UsageError("--xi/--eta: give both or neither");
    if (c.xi.empty() && !is_catalog_symmetry(c.symmetry)) throw UsageError("--symmetry: unknown symmetry '" + c.symmetry + "'");
    if (!c.xi.empty()) {
      try {
        (void)Expression::parse(c.xi, {"s", "x", "t"});
        (void)Expression::parse(c.eta, {"x", "t"});
      } catch (const std::exception& e) {
        throw UsageError(std::string("--xi/--eta: ") + e.what());
      }
    }
  }
  if (c.command == Command::bvp_solve && c.f.empty()) throw UsageError("--f: required by bvp-solve");
  if (!c.f.empty()) check_source("--f", c.f);
  if (!c.u.empty()) check_source("--u", c.u);
  if (!c.exact.empty()) check_source("--exact", c.exact);
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> written;
  Outcome o;
  try {
    switch (c.command) {
      case Command::ops_verify: o = ops_verify(c); break;
      case Command::ops_table: o = ops_table(c, written); break;
      case Command::bvp_solve: o = bvp_solve(c, written); break;
      case Command::bvp_converge: o = bvp_converge(c); break;
      case Command::minimize: o = minimize(c, written); break;
      case Command::noether_check: o = noether_check(c); break;
      case Command::mountain_pass: o = mountain_pass(c, written); break;
      case Command::coherence: o = coherence(c); break;
    }
  } catch (const std::exception& e) {
    for (const auto& path : written) std::filesystem::remove(path);
    err << to_string(c.command) << ": " << e.what() << '\n';
    return 1;
  }

  Json doc{{"command", to_string(c.command)}, {"seed", c.seed}, {"config", config_json(c)}, {"ok", o.ok}, {"result", o.result}};
  if (c.json.empty()) {
    out << doc.dump(2) << '\n';
    err << o.summary << '\n';
  } else {
    std::ofstream f(c.json);
    if (!f) {
      for (const auto& path : written) std::filesystem::remove(path);
      err << "cannot open " << c.json << '\n';
      return 1;
    }
    f << doc.dump(2) << '\n';
    out << o.summary << '\n';
  }
  if (!o.ok) {
    for (const auto& path : written) std::filesystem::remove(path);
    return 1;
  }
  return 0;
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return 2;
  }
  return run(c, out, err);
}

}  // namespace tempvar::cli
