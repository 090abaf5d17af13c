#include "tempvar/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tempvar/error.hpp"

namespace tempvar {
namespace {

constexpr int kMaxTerms = 100000;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

void check_args(double alpha, double x) {
  if (!std::isfinite(alpha) || !std::isfinite(x)) {
    throw DomainError("incomplete gamma: non-finite argument");
  }
  if (alpha <= 0.0) {
    throw DomainError("incomplete gamma: alpha must be positive, got " + std::to_string(alpha));
  }
  if (x < 0.0) {
    throw DomainError("incomplete gamma: x must be non-negative, got " + std::to_string(x));
  }
}

// x^alpha e^-x without intermediate overflow.
double prefactor(double alpha, double x) { return std::exp(alpha * std::log(x) - x); }

double lower_series(double alpha, double x) {
  double term = 1.0 / alpha;
  double sum = term;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= x / (alpha + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * prefactor(alpha, x);
    }
  }
  throw NumericalError("incomplete gamma: series did not converge");
}

// Upper incomplete gamma Gamma(alpha, x) by the modified Lentz algorithm.
double upper_continued_fraction(double alpha, double x) {
  double b = x + 1.0 - alpha;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - alpha);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return prefactor(alpha, x) * h;
    }
  }
  throw NumericalError("incomplete gamma: continued fraction did not converge");
}

}  // namespace

double lower_incomplete_gamma(double alpha, double x) {
  check_args(alpha, x);
  if (x == 0.0) return 0.0;
  if (x < alpha + 1.0) return lower_series(alpha, x);
  return gamma_fn(alpha) - upper_continued_fraction(alpha, x);
}

double gamma_fn(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw DomainError("gamma: argument must be positive and finite");
  }
  return std::tgamma(alpha);
}

double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double tempered_kernel_mass(double order, double sigma, double length) {
  if (sigma < 1e-12) {
    return std::pow(length, order) / std::tgamma(order + 1.0);
  }
  return lower_incomplete_gamma(order, sigma * length) /
         (std::pow(sigma, order) * gamma_fn(order));
}

}  // namespace tempvar
