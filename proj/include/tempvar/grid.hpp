#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tempvar {

/// The quadruple (alpha, sigma, a, b) that parametrizes every tempered operator.
///
/// alpha lies in (0, 1]; alpha = 1 is only meaningful for the classical
/// (integer-order) limit used by the Noether coherence checks. sigma >= 0,
/// with sigma = 0 recovering the classical fractional operators.
struct TemperedParams {
  double alpha = 0.75;
  double sigma = 1.0;
  double a = 0.0;
  double b = 1.0;

  /// Throws DomainError unless 0 < alpha <= 1, sigma >= 0, a < b, all finite.
  void validate() const;
  /// Additionally requires alpha in (1/2, 1) and sigma > 0.
  void validate_embedding() const;

  [[nodiscard]] double length() const { return b - a; }
  [[nodiscard]] TemperedParams with(double new_alpha, double new_sigma) const {
    return {new_alpha, new_sigma, a, b};
  }

  friend bool operator==(const TemperedParams&, const TemperedParams&) = default;
};

/// Values of a function at the nodes t_i = a + i (b - a) / n, i = 0..n.
class GridFunction {
 public:
  GridFunction(const TemperedParams& params, std::vector<double> values);
  /// Zero function on n intervals.
  GridFunction(const TemperedParams& params, std::size_t n);

  static GridFunction sample(const TemperedParams& params, std::size_t n,
                             const std::function<double(double)>& fn);

  [[nodiscard]] const TemperedParams& params() const { return params_; }
  [[nodiscard]] std::size_t intervals() const { return values_.size() - 1; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double step() const { return params_.length() / static_cast<double>(intervals()); }
  [[nodiscard]] double node(std::size_t i) const;

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  /// Piecewise-linear interpolation, clamped to [a, b].
  [[nodiscard]] double interpolate(double t) const;

  /// Same params (up to alpha/sigma, which only label the grid) and same n.
  [[nodiscard]] bool same_grid(const GridFunction& other) const;

  /// Copy carrying different operator parameters over the same nodes.
  [[nodiscard]] GridFunction relabel(const TemperedParams& params) const;

  [[nodiscard]] double max_abs() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double c);

 private:
  TemperedParams params_;
  std::vector<double> values_;
};

GridFunction operator+(GridFunction lhs, const GridFunction& rhs);
GridFunction operator-(GridFunction lhs, const GridFunction& rhs);
GridFunction operator*(double c, GridFunction u);

/// Composite trapezoidal weights on n intervals of width h.
std::vector<double> trapezoid_weights(std::size_t n, double h);

/// Trapezoidal integral of a grid function over [a, b].
double integrate(const GridFunction& u);

/// (h * sum over i in [first, last] of v_i^2)^(1/2): discrete L2 norm restricted to a node range.
double node_range_l2(std::span<const double> v, double h, std::size_t first, std::size_t last);

}  // namespace tempvar
