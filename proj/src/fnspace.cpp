#include "tempvar/fnspace.hpp"

#include <cmath>
#include <numbers>

#include "tempvar/error.hpp"
#include "tempvar/parallel.hpp"
#include "tempvar/specfun.hpp"

namespace tempvar {
namespace {

const OperatorKind kLeftCaputo{Side::left, Family::caputo_derivative, 1.0, ZeroOrder::reject};

double weighted_dot(const std::vector<double>& w, std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * (x[i] * y[i]);
  return sum;
}

void require_same_space(const SpaceElement& u, const SpaceElement& v) {
  if (u.space() != v.space() && !(u.values().same_grid(v.values()) &&
                                   u.space()->params() == v.space()->params())) {
    throw GridMismatch("space elements live on different grids");
  }
}

}  // namespace

BasisSet::BasisSet(const TemperedParams& params, std::size_t n, const OperatorMatrix& caputo)
    : params_(params), n_(n), derivatives_(caputo.entries().middleCols(1, static_cast<Eigen::Index>(n - 1))) {}

GridFunction BasisSet::function(std::size_t i) const {
  if (i == 0 || i >= n_) throw DomainError("hat basis index must be interior");
  GridFunction phi(params_, n_);
  phi[i] = 1.0;
  return phi;
}

Space::Space(const TemperedParams& params, std::size_t n)
    : params_(params),
      n_(n),
      weights_(trapezoid_weights(n, params.length() / static_cast<double>(n))),
      caputo_(kLeftCaputo, params, n),
      basis_(params, n, caputo_) {}

std::shared_ptr<const Space> Space::create(const TemperedParams& params, std::size_t n) {
  params.validate_embedding();
  if (n < 2) throw DomainError("space needs n >= 2 intervals");
  return std::make_shared<const Space>(params, n);
}

void Space::assemble_gram() const {
  const auto dim = static_cast<Eigen::Index>(n_ - 1);
  const Eigen::MatrixXd& derivs = basis_.derivative_matrix();
  const Eigen::Map<const Eigen::VectorXd> w(weights_.data(), static_cast<Eigen::Index>(weights_.size()));
  gram_.resize(dim, dim);
  parallel_for(0, n_ - 1, [&](std::size_t col) {
    const auto j = static_cast<Eigen::Index>(col);
    const Eigen::VectorXd weighted = w.cwiseProduct(derivs.col(j));
    gram_.col(j) = derivs.transpose() * weighted;
    gram_(j, j) += weights_[col + 1];
  });
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();
  gram_factor_.compute(gram_);
  if (gram_factor_.info() != Eigen::Success) {
    throw NumericalError("gram matrix is not positive definite");
  }
}

const Eigen::MatrixXd& Space::gram() const {
  std::call_once(gram_once_, [this] { assemble_gram(); });
  return gram_;
}

Eigen::VectorXd Space::solve_gram(const Eigen::VectorXd& rhs) const {
  std::call_once(gram_once_, [this] { assemble_gram(); });
  return gram_factor_.solve(rhs);
}

SpaceElement::SpaceElement(SpacePtr space, GridFunction values)
    : space_(std::move(space)), values_(std::move(values)), caputo_(values_) {
  if (!space_) throw DomainError("space element: null space");
  if (values_.intervals() != space_->intervals() || values_.params().a != space_->params().a ||
      values_.params().b != space_->params().b) {
    throw GridMismatch("space element: grid differs from the space");
  }
  if (values_[0] != 0.0 || values_[values_.intervals()] != 0.0) {
    throw DomainError("space element: boundary values must be zero");
  }
  values_ = values_.relabel(space_->params());
  caputo_ = space_->caputo().apply(values_);
}

SpaceElement::SpaceElement(SpacePtr space, GridFunction values, GridFunction caputo)
    : space_(std::move(space)), values_(std::move(values)), caputo_(std::move(caputo)) {}

SpaceElement SpaceElement::zero(SpacePtr space) {
  GridFunction z(space->params(), space->intervals());
  return SpaceElement(std::move(space), std::move(z));
}

SpaceElement SpaceElement::from_coefficients(SpacePtr space, const Eigen::VectorXd& coefficients) {
  const std::size_t n = space->intervals();
  if (static_cast<std::size_t>(coefficients.size()) != n - 1) {
    throw GridMismatch("coefficient vector has the wrong length");
  }
  GridFunction u(space->params(), n);
  for (std::size_t i = 1; i < n; ++i) u[i] = coefficients(static_cast<Eigen::Index>(i - 1));
  return SpaceElement(std::move(space), std::move(u));
}

Eigen::VectorXd SpaceElement::coefficients() const {
  const std::size_t n = values_.intervals();
  Eigen::VectorXd c(static_cast<Eigen::Index>(n - 1));
  for (std::size_t i = 1; i < n; ++i) c(static_cast<Eigen::Index>(i - 1)) = values_[i];
  return c;
}

SpaceElement SpaceElement::plus_scaled(double c, const SpaceElement& other) const {
  require_same_space(*this, other);
  GridFunction u = values_;
  GridFunction du = caputo_;
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] += c * other.values_[i];
    du[i] += c * other.caputo_[i];
  }
  return SpaceElement(space_, std::move(u), std::move(du));
}

SpaceElement SpaceElement::scaled(double c) const {
  GridFunction u = values_;
  GridFunction du = caputo_;
  u *= c;
  du *= c;
  return SpaceElement(space_, std::move(u), std::move(du));
}

double inner_product(const SpaceElement& u, const SpaceElement& v) {
  require_same_space(u, v);
  const auto& w = u.space()->weights();
  return weighted_dot(w, u.values().values(), v.values().values()) +
         weighted_dot(w, u.caputo().values(), v.caputo().values());
}

double norm(const SpaceElement& u) { return std::sqrt(inner_product(u, u)); }

double l2_norm(const SpaceElement& u) {
  const auto v = u.values().values();
  return std::sqrt(weighted_dot(u.space()->weights(), v, v));
}

double caputo_l2_norm(const SpaceElement& u) {
  const auto v = u.caputo().values();
  return std::sqrt(weighted_dot(u.space()->weights(), v, v));
}

double embedding_constant(const TemperedParams& params) {
  params.validate_embedding();
  const double two_sigma = 2.0 * params.sigma;
  return std::sqrt(lower_incomplete_gamma(2.0 * params.alpha - 1.0, two_sigma * params.length())) /
         (std::pow(two_sigma, params.alpha - 0.5) * gamma_fn(params.alpha));
}

EmbeddingDiagnostic check_embedding(const SpaceElement& u, double slack) {
  EmbeddingDiagnostic d;
  d.lhs = u.values().max_abs();
  d.rhs = embedding_constant(u.space()->params()) * norm(u);
  d.pass = d.lhs <= d.rhs * (1.0 + slack);
  return d;
}

PoincareDiagnostic check_poincare(const SpaceElement& u) {
  PoincareDiagnostic d;
  d.l2 = l2_norm(u);
  d.caputo_l2 = caputo_l2_norm(u);
  if (d.l2 == 0.0 || d.caputo_l2 == 0.0) {
    throw DomainError("poincare ratio: zero element");
  }
  d.ratio = d.l2 / d.caputo_l2;
  return d;
}

SpaceElement random_smooth_element(const SpacePtr& space, std::mt19937_64& rng, int modes) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(modes));
  for (double& ck : c) ck = coef(rng);
  const auto& p = space->params();
  GridFunction u = GridFunction::sample(p, space->intervals(), [&](double t) {
    const double x = std::numbers::pi * (t - p.a) / p.length();
    double s = 0.0;
    for (int k = 1; k <= modes; ++k) s += c[static_cast<std::size_t>(k - 1)] * std::sin(k * x) / (k * k);
    return s;
  });
  u[0] = 0.0;
  u[u.intervals()] = 0.0;
  return SpaceElement(space, std::move(u));
}

SpaceElement random_jacobi_element(const SpacePtr& space, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  const std::size_t n = space->intervals();
  std::vector<double> raw(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) raw[i] = value(rng);
  GridFunction u(space->params(), n);
  for (std::size_t i = 1; i < n; ++i) u[i] = 0.5 * (raw[i - 1] + raw[i + 1]);
  return SpaceElement(space, std::move(u));
}

}  // namespace tempvar
