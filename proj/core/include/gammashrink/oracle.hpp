#pragma once

#include "gammashrink/model.hpp"
#include "gammashrink/quadrature.hpp"

// Deterministic quadrature evaluation of marginal and single-observation
// posterior quantities. All functions here need β and τ held fixed in the
// PriorSpec; they throw std::invalid_argument otherwise. Integrals over the
// local parameter run in ln ν coordinates, ν = τu.

namespace gammashrink {

// ξ = 1/λ - 1 - ln(1/λ) >= 0, zero only at λ = 1.
struct XiValue {
  double xi = 0.0;
  static XiValue from_lambda(double lambda);
};

// Marginal prior density of λ after integrating out u.
double marginal_prior_density(double lambda, const PriorSpec& prior, const QuadConfig& cfg = {});
double marginal_prior_log_density(double lambda, const PriorSpec& prior,
                                  const QuadConfig& cfg = {});

// E(κ | y) for a single observation with shape delta (η = 1).
double posterior_kappa_mean(double y, double delta, const PriorSpec& prior,
                            const QuadConfig& cfg = {});

struct LambdaMoments {
  double mean = 0.0;
  double variance = 0.0;  // NaN when unavailable (δ <= 1)
  double kappa_mean = 0.0;
  bool variance_available() const;
};

// Posterior mean and variance of λ. The beta argument overrides the value
// fixed in the prior.
LambdaMoments posterior_lambda_moments(double y, double delta, const PriorSpec& prior, double beta,
                                       const QuadConfig& cfg = {});

// Prior probability of the KL neighbourhood {λ : KL(λ0, λ) < eps}.
double prior_kl_mass(double lambda0, double eps, double delta, const PriorSpec& prior,
                     const QuadConfig& cfg = {});

}  // namespace gammashrink
