#pragma once

namespace tempvar {

/// Lower incomplete gamma function gamma(alpha, x) = int_0^x t^(alpha-1) e^(-t) dt.
///
/// Series expansion below x = alpha + 1, Lentz continued fraction for the
/// upper tail above it. Throws DomainError for alpha <= 0, x < 0 or
/// non-finite input.
double lower_incomplete_gamma(double alpha, double x);

/// Complete gamma function for alpha > 0.
double gamma_fn(double alpha);

/// 1 / Gamma(x) for any real x, zero at the poles 0, -1, -2, ...
double reciprocal_gamma(double x);

/// gamma(order, sigma * length) / (sigma^order Gamma(order)): the mass of the
/// tempered kernel on an interval of the given length. Takes the analytic
/// limit length^order / Gamma(order + 1) for sigma below 1e-12.
double tempered_kernel_mass(double order, double sigma, double length);

}  // namespace tempvar
