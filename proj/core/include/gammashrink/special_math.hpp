#pragma once

// Scalar special functions over the positive reals.
//
// Everything here is pure and thread-safe. Functions throw std::domain_error
// when an argument is outside the documented domain.

namespace gammashrink {

double log_gamma(double x);

// order 0 is the digamma function, order 1 the trigamma function.
double polygamma(int order, double x);
double digamma(double x);
double trigamma(double x);

// Remainder of Stirling's series: ln Γ(x) - [(x - 1/2) ln x - x + ln(2π)/2].
// Positive, decreasing, ~ 1/(12x) for large x.
double stirling_remainder(double x);

// ln Γ(x + a) - ln Γ(x) without cancellation for large x. Requires x > 0,
// x + a > 0.
double log_gamma_ratio(double x, double a);

// x ln x - x - ln Γ(x), i.e. ln(x^x e^{-x} / Γ(x)). Stable for huge x.
double log_gamma_shape_kernel(double x);

// ln x - ψ(x) > 0 and 1/x - ψ'(x) < 0, the first and second derivatives of
// the shape kernel above. Both use asymptotic series for large x, where the
// direct differences cancel.
double log_minus_digamma(double x);
double inv_minus_trigamma(double x);

double log_beta(double a, double b);

// Regularized lower incomplete gamma P(shape, rate * x).
double gamma_cdf(double x, double shape, double rate);
double gamma_quantile(double p, double shape, double rate);

// ρ(x) = x - 1 - ln x >= 0, accurate near x = 1.
double rho(double x);
// ρ(1 + d), taking the offset directly so tiny d keeps full precision.
double rho_offset(double d);

// log(1 + exp(x)).
double softplus(double x);

// φ(u) = u ln(1 + 1/u), strictly increasing and concave from 0 to 1.
double phi(double u);
double phi_derivative(double u);
double phi_inv(double v);

// κ*(y) = y φ⁻¹(1/y), the large-observation rate of the expected shrinkage
// factor. Behaves like 1/ln y as y grows.
double kappa_star(double y);

}  // namespace gammashrink
