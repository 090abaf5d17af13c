#include "tempvar/tempered_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempvar/error.hpp"
#include "tempvar/specfun.hpp"

namespace tempvar {
namespace {

// Entries of one operator on n intervals. Left-sided entries are computed
// directly; right-sided entries are the left ones with both indices mirrored.
class Stencil {
 public:
  Stencil(const OperatorKind& kind, const TemperedParams& params, std::size_t n)
      : kind_(kind), n_(n) {
    params.validate();
    if (n < 2) throw DomainError("operator needs n >= 2 intervals");
    const double h = params.length() / static_cast<double>(n);

    decay_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) decay_[k] = std::exp(-params.sigma * h * static_cast<double>(k));

    switch (kind.family) {
      case Family::rl_integral:
        setup_integral(params, h);
        break;
      case Family::caputo_derivative:
      case Family::rl_derivative:
        setup_l1(params, h);
        break;
    }
  }

  [[nodiscard]] std::size_t first(std::size_t i) const { return kind_.side == Side::left ? 0 : i; }
  [[nodiscard]] std::size_t last(std::size_t i) const { return kind_.side == Side::left ? i : n_; }

  [[nodiscard]] double entry(std::size_t i, std::size_t j) const {
    return kind_.side == Side::left ? left_entry(i, j) : left_entry(n_ - i, n_ - j);
  }

  [[nodiscard]] std::size_t singular_row() const { return kind_.side == Side::left ? 0 : n_; }
  [[nodiscard]] bool has_singular_row() const { return kind_.family == Family::rl_derivative; }

 private:
  void setup_integral(const TemperedParams& params, double h) {
    const double order = kind_.order;
    if (order == 0.0) {
      if (kind_.zero_order != ZeroOrder::identity) {
        throw DomainError("tempered integral: order 0 requires the identity convention");
      }
      if (params.sigma != 0.0) {
        throw DomainError("tempered integral: order 0 is only defined for sigma = 0");
      }
      identity_ = true;
      return;
    }
    if (!(order > 0.0 && order <= 1.0)) {
      throw DomainError("tempered integral: order must lie in (0, 1], got " + std::to_string(order));
    }
    // Product trapezoid: piecewise-linear interpolation of the conjugated
    // function integrated exactly against (x - s)^(order - 1).
    scale_ = std::pow(h, order) / std::tgamma(order + 2.0);
    const double p = order + 1.0;
    interior_.resize(n_ + 1);
    interior_[0] = 1.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      const double kd = static_cast<double>(k);
      interior_[k] = std::pow(kd + 1.0, p) - 2.0 * std::pow(kd, p) + std::pow(kd - 1.0, p);
    }
    boundary_.resize(n_ + 1);
    boundary_[0] = 0.0;
    for (std::size_t i = 1; i <= n_; ++i) {
      const double id = static_cast<double>(i);
      boundary_[i] = std::pow(id - 1.0, p) - (id - 1.0 - order) * std::pow(id, order);
    }
  }

  void setup_l1(const TemperedParams& params, double h) {
    const double alpha = params.alpha;
    scale_ = std::pow(h, -alpha) / std::tgamma(2.0 - alpha);
    // b_k = (k+1)^(1-alpha) - k^(1-alpha), with b_0 = 1 also in the alpha = 1 limit.
    std::vector<double> b(n_ + 1);
    b[0] = 1.0;
    for (std::size_t k = 1; k <= n_; ++k) {
      const double kd = static_cast<double>(k);
      b[k] = std::pow(kd + 1.0, 1.0 - alpha) - std::pow(kd, 1.0 - alpha);
    }
    interior_.resize(n_ + 1);
    interior_[0] = b[0];
    for (std::size_t k = 1; k <= n_; ++k) interior_[k] = b[k] - b[k - 1];
    boundary_.resize(n_ + 1);
    boundary_[0] = 0.0;
    for (std::size_t i = 1; i <= n_; ++i) boundary_[i] = -b[i - 1];

    if (kind_.family == Family::rl_derivative) {
      // u(a) (t - a)^(-alpha) e^(-sigma (t - a)) / Gamma(1 - alpha), folded into column 0.
      singular_.assign(n_ + 1, 0.0);
      const double rg = reciprocal_gamma(1.0 - alpha);
      for (std::size_t i = 1; i <= n_; ++i) {
        singular_[i] = std::pow(static_cast<double>(i) * h, -alpha) * decay_[i] * rg;
      }
    }
  }

  [[nodiscard]] double left_entry(std::size_t i, std::size_t j) const {
    if (j > i) return 0.0;
    if (identity_) return i == j ? 1.0 : 0.0;
    if (i == 0) return 0.0;
    const std::size_t k = i - j;
    double w = 0.0;
    if (j == 0) {
      w = scale_ * boundary_[i] * decay_[k];
      if (!singular_.empty()) w += singular_[i];
    } else {
      w = scale_ * interior_[k] * decay_[k];
    }
    return w;
  }

  OperatorKind kind_;
  std::size_t n_;
  bool identity_ = false;
  double scale_ = 0.0;
  std::vector<double> decay_;
  std::vector<double> interior_;
  std::vector<double> boundary_;
  std::vector<double> singular_;
};

GridFunction apply_stencil(const Stencil& stencil, const GridFunction& u) {
  const std::size_t n = u.intervals();
  std::vector<double> out(n + 1, 0.0);
  const auto v = u.values();
  for (std::size_t i = 0; i <= n; ++i) {
    double sum = 0.0;
    for (std::size_t j = stencil.first(i); j <= stencil.last(i); ++j) sum += stencil.entry(i, j) * v[j];
    out[i] = sum;
  }
  if (stencil.has_singular_row()) out[stencil.singular_row()] = 0.0;
  return GridFunction(u.params(), std::move(out));
}

OperatorKind integral_kind(Side side, double order, ZeroOrder zero_order) {
  return {side, Family::rl_integral, order, zero_order};
}

RlDerivative rl_derivative(const GridFunction& u, Side side) {
  const OperatorKind kind{side, Family::rl_derivative, 1.0, ZeroOrder::reject};
  GridFunction value = apply_operator(kind, u);
  const std::size_t edge = side == Side::left ? 0 : u.intervals();
  std::optional<std::size_t> singular;
  if (u[edge] != 0.0 && u.params().alpha < 1.0) singular = edge;
  return {std::move(value), singular};
}

double max_abs_diff(const GridFunction& x, const GridFunction& y, std::size_t first, std::size_t last) {
  double m = 0.0;
  for (std::size_t i = first; i <= last; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double relative(double residual, double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return scale > 0.0 ? residual / scale : residual;
}

}  // namespace

GridFunction apply_operator(const OperatorKind& kind, const GridFunction& u) {
  return apply_stencil(Stencil(kind, u.params(), u.intervals()), u);
}

GridFunction left_tempered_integral(const GridFunction& u, double order, ZeroOrder zero_order) {
  return apply_operator(integral_kind(Side::left, order, zero_order), u);
}

GridFunction right_tempered_integral(const GridFunction& u, double order, ZeroOrder zero_order) {
  return apply_operator(integral_kind(Side::right, order, zero_order), u);
}

GridFunction left_caputo_derivative(const GridFunction& u) {
  return apply_operator({Side::left, Family::caputo_derivative, 1.0, ZeroOrder::reject}, u);
}

GridFunction right_caputo_derivative(const GridFunction& u) {
  return apply_operator({Side::right, Family::caputo_derivative, 1.0, ZeroOrder::reject}, u);
}

RlDerivative left_rl_derivative(const GridFunction& u) { return rl_derivative(u, Side::left); }
RlDerivative right_rl_derivative(const GridFunction& u) { return rl_derivative(u, Side::right); }

OperatorMatrix::OperatorMatrix(const OperatorKind& kind, const TemperedParams& params, std::size_t n)
    : kind_(kind), params_(params), n_(n), entries_(Eigen::MatrixXd::Zero(n + 1, n + 1)) {
  const Stencil stencil(kind, params, n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = stencil.first(i); j <= stencil.last(i); ++j) {
      entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = stencil.entry(i, j);
    }
  }
  if (stencil.has_singular_row()) {
    const auto row = stencil.singular_row();
    entries_.row(static_cast<Eigen::Index>(row)).setZero();
    singular_rows_.push_back(row);
  }
}

GridFunction OperatorMatrix::apply(const GridFunction& u) const {
  if (u.intervals() != n_ || u.params().a != params_.a || u.params().b != params_.b) {
    throw GridMismatch("operator matrix: grid differs from the operand");
  }
  const auto v = u.values();
  std::vector<double> out(n_ + 1, 0.0);
  const bool left = kind_.side == Side::left;
  for (std::size_t i = 0; i <= n_; ++i) {
    double sum = 0.0;
    const std::size_t lo = left ? 0 : i;
    const std::size_t hi = left ? i : n_;
    for (std::size_t j = lo; j <= hi; ++j) {
      sum += entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * v[j];
    }
    out[i] = sum;
  }
  return GridFunction(u.params(), std::move(out));
}

OperatorMatrix operator_matrix(const OperatorKind& kind, const TemperedParams& params, std::size_t n) {
  return OperatorMatrix(kind, params, n);
}

GridFunction reflect(const GridFunction& u) {
  const auto v = u.values();
  return GridFunction(u.params(), std::vector<double>(v.rbegin(), v.rend()));
}

double CompositionReport::max() const {
  return std::max({left_derivative_of_integral, left_integral_of_derivative,
                   right_derivative_of_integral, right_integral_of_derivative});
}

CompositionReport verify_composition(const GridFunction& u) {
  const auto& p = u.params();
  const std::size_t n = u.intervals();
  CompositionReport report;

  // The derivative of an integral vanishes at its own endpoint while u need
  // not; the identity holds for x > a (x < b), so that node is skipped.
  const GridFunction dl = left_caputo_derivative(left_tempered_integral(u, p.alpha));
  report.left_derivative_of_integral = max_abs_diff(dl, u, 1, n);
  const GridFunction dr = right_caputo_derivative(right_tempered_integral(u, p.alpha));
  report.right_derivative_of_integral = max_abs_diff(dr, u, 0, n - 1);

  const double ua = u[0];
  const double ub = u[n];
  const GridFunction left_target = GridFunction::sample(
      p, n, [&](double t) { return -ua * std::exp(-p.sigma * (t - p.a)); }) + u;
  const GridFunction right_target = GridFunction::sample(
      p, n, [&](double t) { return -ub * std::exp(-p.sigma * (p.b - t)); }) + u;
  report.left_integral_of_derivative =
      max_abs_diff(left_tempered_integral(left_caputo_derivative(u), p.alpha), left_target, 0, n);
  report.right_integral_of_derivative =
      max_abs_diff(right_tempered_integral(right_caputo_derivative(u), p.alpha), right_target, 0, n);
  return report;
}

IntegrationByPartsReport verify_integration_by_parts(const GridFunction& u, const GridFunction& v) {
  if (!u.same_grid(v)) throw GridMismatch("integration by parts: grids differ");
  const auto& p = u.params();
  const std::size_t n = u.intervals();
  IntegrationByPartsReport r;

  const GridFunction dv = right_rl_derivative(v).value;
  GridFunction prod = u;
  for (std::size_t i = 0; i <= n; ++i) prod[i] = u[i] * dv[i];
  r.derivative_lhs = integrate(prod);

  const GridFunction iv = right_tempered_integral(v, 1.0 - p.alpha, ZeroOrder::identity);
  // I_{b-} v vanishes at b, so the limit at b contributes u(b) * 0.
  const double boundary = u[0] * iv[0] - u[n] * iv[n];
  const GridFunction du = left_caputo_derivative(u);
  for (std::size_t i = 0; i <= n; ++i) prod[i] = du[i] * v[i];
  r.derivative_rhs = boundary + integrate(prod);
  r.derivative_residual = std::abs(r.derivative_lhs - r.derivative_rhs);
  r.derivative_relative = relative(r.derivative_residual, r.derivative_lhs, r.derivative_rhs);

  const GridFunction iu = left_tempered_integral(u, p.alpha);
  const GridFunction iv_alpha = right_tempered_integral(v, p.alpha);
  for (std::size_t i = 0; i <= n; ++i) prod[i] = iu[i] * v[i];
  r.integral_lhs = integrate(prod);
  for (std::size_t i = 0; i <= n; ++i) prod[i] = u[i] * iv_alpha[i];
  r.integral_rhs = integrate(prod);
  r.integral_residual = std::abs(r.integral_lhs - r.integral_rhs);
  r.integral_relative = relative(r.integral_residual, r.integral_lhs, r.integral_rhs);
  return r;
}

Trajectory::Trajectory(GridFunction values)
    : u(std::move(values)), caputo(left_caputo_derivative(u)) {}

Trajectory::Trajectory(GridFunction values, GridFunction derivative)
    : u(std::move(values)), caputo(std::move(derivative)) {
  if (!u.same_grid(caputo)) throw GridMismatch("trajectory: derivative grid differs");
}

}  // namespace tempvar
