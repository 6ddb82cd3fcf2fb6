#include "gammashrink/miller.hpp"

#include "gammashrink/distributions.hpp"
#include "gammashrink/special_math.hpp"

#include <algorithm>
#include <cmath>

namespace gammashrink {

LogDensityDerivs ShapeTarget::eval(double x) const {
  const double lx = std::log(x);
  return {(c - 1.0) * lx - rate * x + m * log_gamma_shape_kernel(x),
          (c - 1.0) / x - rate + m * log_minus_digamma(x),
          -(c - 1.0) / (x * x) + m * inv_minus_trigamma(x)};
}

double ShapeTarget::log_density(double x) const {
  return (c - 1.0) * std::log(x) - rate * x + m * log_gamma_shape_kernel(x);
}

LogDensityDerivs nu_logpdf_sb(double nu, double t, double tau, double beta, double lambda,
                              double a) {
  if (!(nu > 0.0) || !(t > 0.0) || !(tau > 0.0) || !(beta > 0.0) || !(lambda > 0.0) ||
      !(a > 0.0)) {
    throw std::domain_error("nu_logpdf_sb: arguments must be positive");
  }
  const double ln_nu = std::log(nu);
  const double f = (a - 1.0) * ln_nu - (t / tau) * nu + nu * std::log(beta * nu) - log_gamma(nu) -
                   nu * std::log(lambda) - beta * nu / lambda;
  const double d1 = (a - 1.0) / nu - t / tau + std::log(beta) + log_minus_digamma(nu) + 1.0 -
                    std::log(lambda) - beta / lambda;
  const double d2 = -(a - 1.0) / (nu * nu) + inv_minus_trigamma(nu);
  return {f, d1, d2};
}

ShapeTarget sb_nu_target(double t, double tau, double beta, double lambda, double a) {
  // ν ln(βν) - ln Γ(ν) - ν ln λ - βν/λ = K(ν) - ν ρ(β/λ).
  return {a, t / tau + rho(beta / lambda), 1.0};
}

GammaApprox miller_gamma_approx(const ShapeTarget& target, double init_mean,
                                const MillerOptions& opt) {
  return miller_gamma_approx([&](double x) { return target.eval(x).d1; },
                             [&](double x) { return target.eval(x).d2; }, init_mean, opt);
}

Proposal make_proposal(const ShapeTarget& target, double init_mean, const MillerOptions& opt,
                       bool widen) {
  GammaApprox fit;
  try {
    fit = miller_gamma_approx(target, init_mean, opt);
  } catch (const NumericError&) {
    fit.shape = 1.05;
    fit.status = GammaApprox::Status::Degenerate;
  }
  double shape = fit.shape;
  double rate = fit.rate;
  const bool fallback = !fit.ok();
  if (fallback) {
    // Centre a moderately wide gamma on the warm start.
    shape = std::isfinite(shape) ? std::max(shape, 1.05) : 1.05;
    rate = shape / init_mean;
  }
  if (widen) {
    // Same mode, roughly four times the variance.
    const double mode = (shape - 1.0) / rate;
    const double wide_shape = std::max(1.05, 1.0 + (shape - 1.0) / 4.0);
    if (mode > 0.0 && std::isfinite(mode)) {
      rate = (wide_shape - 1.0) / mode;
      shape = wide_shape;
    }
  }
  return {shape, rate, fallback};
}

MhResult miller_mh_update(const ShapeTarget& target, double current, const MillerOptions& opt,
                          bool widen, RngHandle& rng) {
  const Proposal fwd = make_proposal(target, current, opt, widen);
  const double candidate = sample_gamma(fwd.shape, fwd.rate, rng);
  const Proposal rev = make_proposal(target, candidate, opt, widen);
  const double log_ratio = target.log_density(candidate) - target.log_density(current) +
                           gamma_log_density(current, rev.shape, rev.rate) -
                           gamma_log_density(candidate, fwd.shape, fwd.rate);
  if (std::isnan(log_ratio)) {
    throw NumericError("Metropolis-Hastings ratio is NaN", current, 0.0);
  }
  const bool accept = log_ratio >= 0.0 || std::log(rng.uniform_open()) < log_ratio;
  return {accept ? candidate : current, accept, fwd.fallback};
}

}  // namespace gammashrink
