#include "tempvar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tempvar/error.hpp"

namespace tempvar {

void TemperedParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(sigma) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("tempered params: non-finite value");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("tempered params: alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (sigma < 0.0) {
    throw DomainError("tempered params: sigma must be non-negative, got " + std::to_string(sigma));
  }
  if (!(a < b)) {
    throw DomainError("tempered params: need a < b");
  }
}

void TemperedParams::validate_embedding() const {
  validate();
  if (!(alpha > 0.5 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (1/2, 1), got " + std::to_string(alpha));
  }
  if (!(sigma > 0.0)) {
    throw DomainError("sigma must be positive, got " + std::to_string(sigma));
  }
}

GridFunction::GridFunction(const TemperedParams& params, std::vector<double> values)
    : params_(params), values_(std::move(values)) {
  params_.validate();
  if (values_.size() < 3) {
    throw DomainError("grid function needs n >= 2 intervals");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw NumericalError("grid function: non-finite value");
  }
}

GridFunction::GridFunction(const TemperedParams& params, std::size_t n)
    : GridFunction(params, std::vector<double>(n + 1, 0.0)) {}

GridFunction GridFunction::sample(const TemperedParams& params, std::size_t n,
                                  const std::function<double(double)>& fn) {
  GridFunction out(params, n);
  for (std::size_t i = 0; i <= n; ++i) out.values_[i] = fn(out.node(i));
  for (double v : out.values_) {
    if (!std::isfinite(v)) throw NumericalError("grid function: sampled non-finite value");
  }
  return out;
}

double GridFunction::node(std::size_t i) const {
  if (i == intervals()) return params_.b;
  return params_.a + static_cast<double>(i) * step();
}

double GridFunction::interpolate(double t) const {
  const double s = std::clamp((t - params_.a) / step(), 0.0, static_cast<double>(intervals()));
  const auto i = std::min(static_cast<std::size_t>(s), intervals() - 1);
  const double theta = s - static_cast<double>(i);
  return (1.0 - theta) * values_[i] + theta * values_[i + 1];
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return size() == other.size() && params_.a == other.params_.a && params_.b == other.params_.b;
}

GridFunction GridFunction::relabel(const TemperedParams& params) const {
  if (params.a != params_.a || params.b != params_.b) {
    throw GridMismatch("relabel: interval differs");
  }
  return GridFunction(params, values_);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  if (!same_grid(other)) throw GridMismatch("grid function sum: grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  if (!same_grid(other)) throw GridMismatch("grid function difference: grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
GridFunction operator*(double c, GridFunction u) { return u *= c; }

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n + 1, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

double integrate(const GridFunction& u) {
  const auto v = u.values();
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
  return sum * u.step();
}

double node_range_l2(std::span<const double> v, double h, std::size_t first, std::size_t last) {
  double sum = 0.0;
  for (std::size_t i = first; i <= last && i < v.size(); ++i) sum += v[i] * v[i];
  return std::sqrt(h * sum);
}

}  // namespace tempvar
