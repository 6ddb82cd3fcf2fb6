#include "gammashrink/oracle.hpp"

#include "gammashrink/special_math.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gammashrink {

namespace {

constexpr double kLogNuLo = -700.0;
constexpr double kLogNuHi = 700.0;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Globals {
  double beta;
  double tau;
};

Globals fixed_globals(const PriorSpec& prior) {
  prior.validate();
  if (!prior.beta.is_fixed() || !prior.tau.is_fixed()) {
    throw std::invalid_argument("quadrature oracle needs fixed beta and tau");
  }
  return {prior.beta.value, prior.tau.value};
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) + " must be positive and finite");
  }
}

// ln of the prior density of t = ln ν, ν = τu.
double log_prior_lognu(double t, const PriorSpec& prior, double log_tau) {
  const double s = t - log_tau;
  return local_prior_log_density_logu(s, prior) + s;
}

// x ln(1 + c/x) given ln x, finite for x down to the smallest doubles.
double x_log1p_ratio(double x, double log_x, double c) {
  const double r = c / x;
  if (r < 1e6) return x * std::log1p(r);
  return x * (std::log(c + x) - log_x);
}

// ln p(y | ν) up to terms free of ν, with y' = δ y / β.
double log_likelihood_nu(double nu, double t, double y_prime, double delta) {
  return log_gamma_ratio(nu, delta + 1.0) - x_log1p_ratio(nu, t, y_prime) -
         (delta + 1.0) * std::log(y_prime + nu);
}

// P(lo < X < hi) for X ~ Ga(shape, rate), taken from whichever tail keeps
// precision.
double gamma_interval_probability(double shape, double rate, double lo, double hi) {
  if (shape > 1e10) {
    // Wilson-Hilferty: (X rate / shape)^{1/3} is close to normal.
    const double k9 = 9.0 * shape;
    auto z = [&](double x) {
      return (std::cbrt(rate * x / shape) - (1.0 - 1.0 / k9)) * std::sqrt(k9 / 2.0);
    };
    const double zl = z(lo);
    const double zh = z(hi);
    if (zl > 0.0) return 0.5 * (std::erfc(zl) - std::erfc(zh));
    return 0.5 * (std::erfc(-zh) - std::erfc(-zl));
  }
  const double zl = rate * lo;
  const double zh = rate * hi;
  if (zl >= shape) {
    return boost::math::gamma_q(shape, zl) - boost::math::gamma_q(shape, zh);
  }
  return boost::math::gamma_p(shape, zh) - boost::math::gamma_p(shape, zl);
}

double expectation_ratio(const LogIntegrand& log_weight, const LogIntegrand& log_g,
                         double log_norm, const QuadConfig& cfg) {
  const LogQuadResult num =
      integrate_exp_log([&](double t) { return log_weight(t) + log_g(t); }, kLogNuLo, kLogNuHi,
                        cfg);
  if (num.log_value == kNegInf) return 0.0;
  return std::exp(num.log_value - log_norm);
}

}  // namespace

XiValue XiValue::from_lambda(double lambda) {
  require_positive(lambda, "lambda");
  return {rho(1.0 / lambda)};
}

bool LambdaMoments::variance_available() const { return !std::isnan(variance); }

double marginal_prior_log_density(double lambda, const PriorSpec& prior, const QuadConfig& cfg) {
  require_positive(lambda, "lambda");
  const auto [beta, tau] = fixed_globals(prior);
  // λ | ν ~ IG(1 + ν, βν) gives p(λ) = β/λ² ∫ π(u) exp{K(ν) - ν ρ(β/λ)} du
  // with K(ν) = ν ln ν - ν - ln Γ(ν).
  const double xi = rho(beta / lambda);
  const double prefactor = std::log(beta) - 2.0 * std::log(lambda);
  if (prior.family == PriorFamily::GL) {
    return prefactor + log_gamma_shape_kernel(tau) - tau * xi;
  }
  // At λ = β the ν-tail behaves like ν^{1/2 - b}: the spike is a pole for b <= 1/2.
  if (xi == 0.0 && prior.b <= 0.5) return std::numeric_limits<double>::infinity();
  const double log_tau = std::log(tau);
  const LogQuadResult r = integrate_exp_log(
      [&](double t) {
        const double nu = std::exp(t);
        return log_prior_lognu(t, prior, log_tau) + log_gamma_shape_kernel(nu) - nu * xi;
      },
      kLogNuLo, kLogNuHi, cfg);
  return prefactor + r.log_value;
}

double marginal_prior_density(double lambda, const PriorSpec& prior, const QuadConfig& cfg) {
  return std::exp(marginal_prior_log_density(lambda, prior, cfg));
}

double posterior_kappa_mean(double y, double delta, const PriorSpec& prior,
                            const QuadConfig& cfg) {
  const auto [beta, _] = fixed_globals(prior);
  return posterior_lambda_moments(y, delta, prior, beta, cfg).kappa_mean;
}

LambdaMoments posterior_lambda_moments(double y, double delta, const PriorSpec& prior,
                                       double beta, const QuadConfig& cfg) {
  require_positive(y, "y");
  require_positive(delta, "delta");
  require_positive(beta, "beta");
  const double tau = fixed_globals(prior).tau;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  // Conditional on ν: E(λ | ν, y) = β + (1 - κ)(y - β), κ = ν / (δ + ν), and
  // Var(λ | ν, y) = m² / (δ + ν - 1).
  auto cond_mean = [&](double kappa) { return kappa * beta + (1.0 - kappa) * y; };

  if (prior.family == PriorFamily::GL) {
    const double kappa = tau / (delta + tau);
    const double m = cond_mean(kappa);
    const double var = delta + tau > 1.0 ? m * m / (delta + tau - 1.0) : nan;
    return {m, var, kappa};
  }

  const double log_tau = std::log(tau);
  const double y_prime = delta * y / beta;
  const LogIntegrand log_weight = [&](double t) {
    const double nu = std::exp(t);
    return log_prior_lognu(t, prior, log_tau) + log_likelihood_nu(nu, t, y_prime, delta);
  };
  const double log_norm = integrate_exp_log(log_weight, kLogNuLo, kLogNuHi, cfg).log_value;

  // ln κ = -ln(1 + δ/ν).
  auto log_kappa = [&](double t) { return -softplus(std::log(delta) - t); };
  auto kappa_of = [&](double t) { return std::exp(log_kappa(t)); };

  const double kappa_mean = expectation_ratio(log_weight, log_kappa, log_norm, cfg);
  const double mean = cond_mean(kappa_mean);

  double variance = nan;
  if (delta > 1.0) {
    const double within = expectation_ratio(
        log_weight,
        [&](double t) {
          const double m = cond_mean(kappa_of(t));
          return 2.0 * std::log(m) - std::log(delta + std::exp(t) - 1.0);
        },
        log_norm, cfg);
    const double kappa_var = expectation_ratio(
        log_weight,
        [&](double t) {
          const double dev = std::abs(kappa_of(t) - kappa_mean);
          return dev == 0.0 ? kNegInf : 2.0 * std::log(dev);
        },
        log_norm, cfg);
    variance = within + (y - beta) * (y - beta) * kappa_var;
  }
  return {mean, variance, kappa_mean};
}

double prior_kl_mass(double lambda0, double eps, double delta, const PriorSpec& prior,
                     const QuadConfig& cfg) {
  const KlNeighborhood nb = kl_neighborhood(lambda0, eps, delta);
  const auto [beta, tau] = fixed_globals(prior);
  // 1/λ | ν ~ Ga(1 + ν, βν); the neighbourhood is an interval in 1/λ.
  const double inv_lo = 1.0 / nb.hi;
  const double inv_hi = 1.0 / nb.lo;
  if (prior.family == PriorFamily::GL) {
    return gamma_interval_probability(1.0 + tau, beta * tau, inv_lo, inv_hi);
  }
  const double log_tau = std::log(tau);
  const LogQuadResult r = integrate_exp_log(
      [&](double t) {
        const double nu = std::exp(t);
        const double p = gamma_interval_probability(1.0 + nu, beta * nu, inv_lo, inv_hi);
        if (!(p > 0.0)) return kNegInf;
        return log_prior_lognu(t, prior, log_tau) + std::log(p);
      },
      kLogNuLo, kLogNuHi, cfg);
  return std::min(1.0, std::exp(r.log_value));
}

}  // namespace gammashrink
