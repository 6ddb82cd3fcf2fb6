#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gammashrink {

// One gamma observation: y | λ ~ Ga(delta, delta / (λ eta)).
struct Observation {
  double y = 1.0;
  double delta = 1.0;
  double eta = 1.0;

  bool valid() const;
  // y / eta, the quantity whose mean is λ.
  double scaled() const { return y / eta; }
};

using Observations = std::vector<Observation>;

// Throws std::invalid_argument naming the first offending index.
void validate(std::span<const Observation> data);

enum class PriorFamily { SB, IRB, GL };

std::string_view to_string(PriorFamily family);
PriorFamily parse_family(std::string_view name);

// Treatment of a global parameter (β or τ): held fixed, or given a Ga(shape,
// rate) hyperprior and sampled.
struct GlobalParam {
  enum class Kind { Fixed, GammaPrior };
  Kind kind = Kind::GammaPrior;
  double value = 1.0;  // used when Fixed
  double shape = 0.1;  // used when GammaPrior
  double rate = 0.1;

  static GlobalParam fixed(double v) { return {Kind::Fixed, v, 0.0, 0.0}; }
  static GlobalParam gamma_prior(double shape, double rate) {
    return {Kind::GammaPrior, 1.0, shape, rate};
  }
  bool is_fixed() const { return kind == Kind::Fixed; }
  bool valid() const;
  std::string describe() const;
};

// Local prior family with hyperparameters. (a, b) are always stored in SB
// order; for IRB the density is IRB(u; b, a) with normalizer B(b, a).
// GL ignores (a, b).
struct PriorSpec {
  PriorFamily family = PriorFamily::SB;
  double a = 2.0;
  double b = 0.5;
  GlobalParam beta = GlobalParam::gamma_prior(0.1, 0.1);
  GlobalParam tau = GlobalParam::gamma_prior(0.1, 0.1);

  void validate() const;
};

// Exponents of π(u) ~ C u^{alpha-1} / {1 + ln(1 + 1/u)}^{1+gamma} as u -> 0.
struct TailIndices {
  double alpha = 0.0;
  double gamma_idx = -1.0;
};

TailIndices tail_indices(const PriorSpec& prior);

// Local prior densities. The *_log variants take log u so they remain exact
// for u far outside the double range of exp().
double sb_log_density_logu(double log_u, double a, double b);
double irb_log_density_logu(double log_u, double b, double a);
double sb_log_density(double u, double a, double b);
double irb_log_density(double u, double b, double a);
double sb_density(double u, double a, double b);
double irb_density(double u, double b, double a);
// Dispatches on family; throws for GL, which has no density on u.
double local_prior_log_density_logu(double log_u, const PriorSpec& prior);

// κ = τu / (δ + τu).
double shrinkage_factor(double tau, double u, double delta);

struct InverseGammaParams {
  double shape;
  double scale;
  double mean() const { return scale / (shape - 1.0); }
};

// λ | y, ν, β ~ IG(1 + δ + ν, δ y/η + β ν).
InverseGammaParams conditional_lambda_posterior(const Observation& obs, double nu, double beta);

// δ (λ0/λ - 1 - ln(λ0/λ)).
double kl_divergence(double lambda0, double lambda, double delta);

struct KlNeighborhood {
  double lo;       // λ bounds of { λ : KL(λ0, λ) < eps }
  double hi;
  double c_lower;  // ρ(1 - c_lower) = ρ(1 + c_upper) = eps / delta
  double c_upper;
};

KlNeighborhood kl_neighborhood(double lambda0, double eps, double delta);

}  // namespace gammashrink
