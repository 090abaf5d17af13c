#include "tempvar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tempvar {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const GridFunction& u) {
  out << "t,value\n";
  for (std::size_t i = 0; i < u.size(); ++i) out << format_double(u.node(i)) << ',' << format_double(u[i]) << '\n';
}

void write_csv(const std::string& path, const GridFunction& u) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(f, u);
  if (!f) throw std::runtime_error("write failed: " + path);
}

GridFunction read_csv(const std::string& path, const TemperedParams& params) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,value") throw std::runtime_error(path + ": expected header 't,value'");
  std::vector<double> ts, vs;
  std::size_t row = 1;
  while (std::getline(f, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path + ": line " + std::to_string(row) + " lacks a comma");
    double t = 0, v = 0;
    const char* b = line.data();
    const auto r1 = std::from_chars(b, b + comma, t);
    const auto r2 = std::from_chars(b + comma + 1, b + line.size(), v);
    if (r1.ec != std::errc() || r1.ptr != b + comma || r2.ec != std::errc() || r2.ptr != b + line.size())
      throw std::runtime_error(path + ": bad number on line " + std::to_string(row));
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.size() < 3) throw std::runtime_error(path + ": need at least 3 rows");
  const std::size_t n = ts.size() - 1;
  const double h = (ts.back() - ts.front()) / static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i)
    if (std::abs(ts[i] - (ts.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::abs(ts.back())))
      throw std::runtime_error(path + ": nodes are not uniformly spaced");
  TemperedParams p = params;
  p.a = ts.front();
  p.b = ts.back();
  return GridFunction(p, std::move(vs));
}

void write_matrix_csv(std::ostream& out, const OperatorMatrix& m) {
  const auto& e = m.entries();
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      if (j) out << ',';
      out << format_double(e(i, j));
    }
    out << '\n';
  }
}

Json to_json(const TemperedParams& p) { return Json{{"alpha", p.alpha}, {"sigma", p.sigma}, {"a", p.a}, {"b", p.b}}; }

Json to_json(const GridFunction& u) {
  Json t = Json::array(), v = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    t.push_back(u.node(i));
    v.push_back(u[i]);
  }
  return Json{{"t", t}, {"value", v}};
}

Json to_json(const CompositionReport& r) {
  return Json{{"left_derivative_of_integral", r.left_derivative_of_integral},
              {"left_integral_of_derivative", r.left_integral_of_derivative},
              {"right_derivative_of_integral", r.right_derivative_of_integral},
              {"right_integral_of_derivative", r.right_integral_of_derivative},
              {"max", r.max()}};
}

Json to_json(const IntegrationByPartsReport& r) {
  return Json{{"derivative", {{"lhs", r.derivative_lhs}, {"rhs", r.derivative_rhs}, {"residual", r.derivative_residual}, {"relative", r.derivative_relative}}},
              {"integral", {{"lhs", r.integral_lhs}, {"rhs", r.integral_rhs}, {"residual", r.integral_residual}, {"relative", r.integral_relative}}}};
}

Json to_json(const SolveReport& r, bool with_profile) {
  Json trace = Json::array();
  for (const auto& e : r.trace) trace.push_back(Json{{"iteration", e.iteration}, {"value", e.value}, {"grad_norm", e.grad_norm}});
  Json j{{"value", r.value},          {"grad_norm", r.grad_norm}, {"el_residual", r.el_residual},
         {"iterations", r.iterations}, {"converged", r.converged}, {"message", r.message},
         {"trace", trace}};
  if (with_profile) j["extremal"] = to_json(r.extremal.values());
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json arr = Json::array();
  for (const auto& c : r.conditions) {
    Json j{{"name", c.name}, {"checked", c.checked}, {"pass", c.pass}, {"violations", c.violations}};
    if (c.witness) {
      j["witness"] = Json{{"x", c.witness->x}, {"y", c.witness->y}, {"t", c.witness->t}};
      j["worst_excess"] = c.worst_excess;
    }
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return Json{{"all_pass", r.all_pass()}, {"conditions", arr}};
}

Json to_json(const NoetherReport& r) {
  Json c = Json::array();
  for (std::size_t i = r.first; i <= r.last; ++i) c.push_back(r.C_values[i]);
  return Json{{"classical", r.classical},
              {"first_node", r.first},
              {"last_node", r.last},
              {"mean", r.mean},
              {"max_deviation", r.max_deviation},
              {"relative_drift", r.relative_drift},
              {"C_values", c}};
}

Json to_json(const MomentumReport& r) {
  return Json{{"noether", to_json(r.noether)},   {"right_limit", r.right_limit}, {"left_limit", r.left_limit},
              {"boundary_value", r.boundary_value}, {"gap", r.gap},               {"relative_gap", r.relative_gap}};
}

Json to_json(const InvarianceReport& r) {
  return Json{{"base_value", r.base_value}, {"s_values", r.s_values}, {"deviations", r.deviations}, {"max_deviation", r.max_deviation}};
}

Json to_json(const CoherenceReport& r) {
  Json modes = Json::array();
  for (const auto& m : r.modes) modes.push_back(Json{{"alpha", m.alpha}, {"sigma", m.sigma}, {"report", to_json(m.report)}});
  return Json{{"modes", modes},
              {"sigma_zero_gap", r.sigma_zero_gap},
              {"classical_gap", r.classical_gap},
              {"classical_ratio", r.classical_ratio},
              {"coherent", r.coherent()}};
}

Json to_json(const GeometryReport& r) {
  return Json{{"found", r.found}, {"j_zero", r.j_zero}, {"rho", r.rho}, {"eta", r.eta}, {"lambda", r.lambda}, {"message", r.message}};
}

Json to_json(const MountainPassReport& r) {
  return Json{{"critical_value", r.solve.value}, {"grad_norm", r.solve.grad_norm}, {"iterations", r.solve.iterations},
              {"converged", r.solve.converged},  {"message", r.solve.message},     {"initial_peak", r.initial_peak},
              {"peak_index", r.path.peak_index}, {"path_values", r.path.values},    {"el_residual", r.solve.el_residual}};
}

Json to_json(const ConvergenceEntry& e) { return Json{{"n", e.n}, {"l2_error", e.l2_error}, {"ratio", e.ratio}}; }

}  // namespace tempvar
