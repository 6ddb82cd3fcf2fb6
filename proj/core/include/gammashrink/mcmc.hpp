#pragma once

#include "gammashrink/miller.hpp"
#include "gammashrink/model.hpp"
#include "gammashrink/rng.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gammashrink {

struct McmcConfig {
  int burnin = 2000;
  int samples = 3000;
  int thin = 1;
  std::uint64_t seed = 1;
  double miller_tol = 1e-8;
  int miller_max_iter = 50;

  void validate() const;
  MillerOptions miller() const { return {miller_tol, miller_max_iter}; }
};

// Latent state of one chain. SB uses t, IRB uses (s, w, z); GL leaves nu and
// every augmentation block empty because u ≡ 1 and ν ≡ τ.
struct ChainState {
  std::vector<double> lambda;
  double beta = 1.0;
  double tau = 1.0;
  std::vector<double> nu;
  std::vector<double> t;
  std::vector<double> s;
  std::vector<double> w;
  std::vector<double> z;

  // Checks sizes and strict positivity for the given family; returns an
  // empty string when valid, otherwise a description of the first problem.
  std::string check(PriorFamily family, std::size_t n) const;
};

// Metropolis-Hastings bookkeeping for one target (a ν_i, or τ under GL).
struct MhTracker {
  long proposals = 0;
  long accepts = 0;
  long fallbacks = 0;
  int window_proposals = 0;
  int window_accepts = 0;
  bool widen = false;

  void record(bool accepted, bool fallback, bool adapting);
  double rate() const { return proposals == 0 ? 0.0 : static_cast<double>(accepts) / proposals; }
};

// Mutable per-chain context threaded through the sweeps.
struct SweepContext {
  MillerOptions miller;
  std::vector<MhTracker> nu_mh;  // one per unit (SB, IRB)
  MhTracker tau_mh;              // GL only
  bool adapting = true;          // proposal widening allowed (burn-in only)
  long sweep = 0;
};

// A non-finite or invalid draw. Carries where it happened and the acceptance
// rates accumulated up to that point.
class ChainError : public std::runtime_error {
 public:
  ChainError(const std::string& what, long unit, std::string step, long sweep)
      : std::runtime_error(what), unit_(unit), step_(std::move(step)), sweep_(sweep) {}

  long unit() const { return unit_; }  // -1 for global parameters
  const std::string& step() const { return step_; }
  long sweep() const { return sweep_; }

  std::vector<double> partial_acceptance;

 private:
  long unit_;
  std::string step_;
  long sweep_;
};

// Initial state: λ_i = y_i/η_i, β = δ-weighted mean of y/η (or its fixed
// value), τ = 1 (or its fixed value), u_i = 1, and augmentation variables
// drawn once from their conditionals.
ChainState initial_state(std::span<const Observation> data, const PriorSpec& prior,
                         RngHandle& rng);

void gibbs_sweep_sb(ChainState& state, std::span<const Observation> data, const PriorSpec& prior,
                    SweepContext& ctx, RngHandle& rng);
void gibbs_sweep_irb(ChainState& state, std::span<const Observation> data, const PriorSpec& prior,
                     SweepContext& ctx, RngHandle& rng);
void gibbs_sweep_gl(ChainState& state, std::span<const Observation> data, const PriorSpec& prior,
                    SweepContext& ctx, RngHandle& rng);
void gibbs_sweep(ChainState& state, std::span<const Observation> data, const PriorSpec& prior,
                 SweepContext& ctx, RngHandle& rng);

struct ChainOutput {
  PriorFamily family = PriorFamily::SB;
  std::size_t n = 0;
  std::size_t draws = 0;
  // Row-major draws × n.
  std::vector<double> lambda;
  std::vector<double> kappa;
  std::vector<double> beta;
  std::vector<double> tau;
  // Per-unit ν acceptance (SB, IRB); empty under GL.
  std::vector<double> acceptance_rate;
  // τ acceptance under GL with a sampled τ; NaN otherwise.
  double tau_acceptance_rate = 0.0;
  long fallback_proposals = 0;
  std::vector<double> ess_lambda;
  std::vector<double> ess_kappa;
  double ess_beta = 0.0;
  double ess_tau = 0.0;
  std::vector<std::string> warnings;

  std::vector<double> lambda_draws(std::size_t unit) const;
  std::vector<double> kappa_draws(std::size_t unit) const;
};

// Runs burnin + samples * thin sweeps and keeps every thin-th post-burn-in
// state. IRB additionally requires b < 1. Throws ChainError on failure.
ChainOutput run_chain(std::span<const Observation> data, const PriorSpec& prior,
                      const McmcConfig& cfg, std::uint64_t stream = 0);

// Independent chains on separate RNG streams, run concurrently and pooled in
// chain order.
ChainOutput run_chains(std::span<const Observation> data, const PriorSpec& prior,
                       const McmcConfig& cfg, int chains);

struct PosteriorSummary {
  double mean = 0.0;
  double variance = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double kappa_mean = 0.0;
  double mcse = 0.0;  // Monte Carlo standard error of the mean
};

struct ScalarSummary {
  double mean = 0.0;
  double variance = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Per-unit posterior summaries with equal-tailed intervals at `level`.
// Needs at least 10 stored draws.
std::vector<PosteriorSummary> summarize(const ChainOutput& output, double level);
ScalarSummary summarize_scalar(std::span<const double> draws, double level);

}  // namespace gammashrink
