#include "gammashrink/model.hpp"

#include "gammashrink/special_math.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gammashrink {

namespace {

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// ln ln(1 + 1/u) from log u, keeping precision in both tails.
double log_log1p_inv(double log_u) {
  if (log_u > 30.0) {
    // ln(1 + e^{-s}) = e^{-s} - e^{-2s}/2 + ...
    const double e = std::exp(-log_u);
    return -log_u + std::log1p(-0.5 * e);
  }
  return std::log(softplus(-log_u));
}

}  // namespace

bool Observation::valid() const {
  return positive_finite(y) && positive_finite(delta) && positive_finite(eta);
}

void validate(std::span<const Observation> data) {
  if (data.empty()) throw std::invalid_argument("no observations");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!data[i].valid()) {
      std::ostringstream msg;
      msg << "observation " << i << " is invalid (y=" << data[i].y << ", delta=" << data[i].delta
          << ", eta=" << data[i].eta << "); all fields must be positive and finite";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::string_view to_string(PriorFamily family) {
  switch (family) {
    case PriorFamily::SB:
      return "sb";
    case PriorFamily::IRB:
      return "irb";
    case PriorFamily::GL:
      return "gl";
  }
  return "?";
}

PriorFamily parse_family(std::string_view name) {
  if (name == "sb" || name == "SB") return PriorFamily::SB;
  if (name == "irb" || name == "IRB") return PriorFamily::IRB;
  if (name == "gl" || name == "GL") return PriorFamily::GL;
  throw std::invalid_argument("unknown prior family '" + std::string(name) + "'");
}

bool GlobalParam::valid() const {
  if (is_fixed()) return positive_finite(value);
  return positive_finite(shape) && positive_finite(rate);
}

namespace {

std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string GlobalParam::describe() const {
  if (is_fixed()) return "fixed:" + shortest(value);
  return "gamma:" + shortest(shape) + "," + shortest(rate);
}

void PriorSpec::validate() const {
  if (family != PriorFamily::GL && !(positive_finite(a) && positive_finite(b))) {
    throw std::invalid_argument("prior hyperparameters a and b must be positive");
  }
  if (!beta.valid()) throw std::invalid_argument("invalid beta treatment " + beta.describe());
  if (!tau.valid()) throw std::invalid_argument("invalid tau treatment " + tau.describe());
}

TailIndices tail_indices(const PriorSpec& prior) {
  switch (prior.family) {
    case PriorFamily::SB:
      return {prior.a, -1.0};
    case PriorFamily::IRB:
      return {0.0, prior.a};
    case PriorFamily::GL:
      break;
  }
  throw std::invalid_argument("GL has no local prior and hence no tail indices");
}

double sb_log_density_logu(double log_u, double a, double b) {
  return (a - 1.0) * log_u - (a + b) * softplus(log_u) - log_beta(a, b);
}

double irb_log_density_logu(double log_u, double b, double a) {
  // -ln u - ln(1 + u) + (b - 1) ln L - (b + a) ln(1 + L), L = ln(1 + 1/u).
  const double log_l = log_log1p_inv(log_u);
  const double l = std::exp(log_l);
  return -log_u - softplus(log_u) + (b - 1.0) * log_l - (b + a) * std::log1p(l) - log_beta(b, a);
}

double sb_log_density(double u, double a, double b) {
  if (!positive_finite(u)) throw std::domain_error("sb_density: u must be positive");
  return sb_log_density_logu(std::log(u), a, b);
}

double irb_log_density(double u, double b, double a) {
  if (!positive_finite(u)) throw std::domain_error("irb_density: u must be positive");
  return irb_log_density_logu(std::log(u), b, a);
}

double sb_density(double u, double a, double b) { return std::exp(sb_log_density(u, a, b)); }

double irb_density(double u, double b, double a) { return std::exp(irb_log_density(u, b, a)); }

double local_prior_log_density_logu(double log_u, const PriorSpec& prior) {
  switch (prior.family) {
    case PriorFamily::SB:
      return sb_log_density_logu(log_u, prior.a, prior.b);
    case PriorFamily::IRB:
      return irb_log_density_logu(log_u, prior.b, prior.a);
    case PriorFamily::GL:
      break;
  }
  throw std::invalid_argument("GL has no density on the local parameter");
}

double shrinkage_factor(double tau, double u, double delta) {
  if (!positive_finite(tau) || !(u > 0.0) || !positive_finite(delta)) {
    throw std::domain_error("shrinkage_factor: arguments must be positive");
  }
  const double nu = tau * u;
  if (std::isinf(nu)) return 1.0;
  return nu / (delta + nu);
}

InverseGammaParams conditional_lambda_posterior(const Observation& obs, double nu, double beta) {
  if (!positive_finite(nu) || !positive_finite(beta)) {
    throw std::domain_error("conditional_lambda_posterior: nu and beta must be positive");
  }
  return {1.0 + obs.delta + nu, obs.delta * obs.scaled() + beta * nu};
}

double kl_divergence(double lambda0, double lambda, double delta) {
  if (!positive_finite(lambda0) || !positive_finite(lambda) || !positive_finite(delta)) {
    throw std::domain_error("kl_divergence: arguments must be positive");
  }
  return delta * rho(lambda0 / lambda);
}

KlNeighborhood kl_neighborhood(double lambda0, double eps, double delta) {
  if (!positive_finite(lambda0) || !positive_finite(delta)) {
    throw std::domain_error("kl_neighborhood: lambda0 and delta must be positive");
  }
  if (!positive_finite(eps)) throw std::domain_error("kl_neighborhood: eps must be positive");
  const double target = eps / delta;

  // ρ(1 - c) is increasing in c on (0, 1) and diverges at 1.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rho_offset(-mid) < target ? lo : hi) = mid;
  }
  const double c_lower = 0.5 * (lo + hi);

  // ρ(1 + c) is increasing on (0, ∞); bracket then bisect.
  lo = 0.0;
  hi = 1.0;
  while (rho_offset(hi) < target) hi *= 2.0;
  for (int i = 0; i < 400 && hi - lo > 1e-16 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rho_offset(mid) < target ? lo : hi) = mid;
  }
  const double c_upper = 0.5 * (lo + hi);

  // The neighborhood is an interval in 1/λ around 1/λ0.
  const double inv0 = 1.0 / lambda0;
  return {1.0 / (inv0 * (1.0 + c_upper)), 1.0 / (inv0 * (1.0 - c_lower)), c_lower, c_upper};
}

}  // namespace gammashrink
