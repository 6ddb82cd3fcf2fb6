#include "gammashrink/mcmc.hpp"

#include "gammashrink/diagnostics.hpp"
#include "gammashrink/distributions.hpp"
#include "gammashrink/special_math.hpp"

#include <cmath>
#include <limits>
#include <exception>
#include <numeric>
#include <sstream>
#include <thread>

namespace gammashrink {

namespace {

constexpr int kAdaptWindow = 200;
constexpr double kWidenBelow = 0.05;
constexpr double kWarnBelow = 0.20;

double require_draw(double x, long unit, const char* step, long sweep) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream msg;
    msg << "invalid draw " << x << " in step '" << step << "'";
    if (unit >= 0) msg << " for unit " << unit;
    msg << " at sweep " << sweep;
    throw ChainError(msg.str(), unit, step, sweep);
  }
  return x;
}

}  // namespace

void McmcConfig::validate() const {
  if (burnin < 0) throw std::invalid_argument("burnin must be non-negative");
  if (samples < 1) throw std::invalid_argument("samples must be at least 1");
  if (thin < 1) throw std::invalid_argument("thin must be at least 1");
  if (!(miller_tol > 0.0) || miller_max_iter < 1) {
    throw std::invalid_argument("Miller tolerance and iteration cap must be positive");
  }
}

std::string ChainState::check(PriorFamily family, std::size_t n) const {
  auto bad = [](double x) { return !(x > 0.0) || !std::isfinite(x); };
  auto bad_block = [&](const std::vector<double>& v, const char* name,
                       bool expected) -> std::string {
    if (!expected) return v.empty() ? "" : std::string(name) + " should be empty";
    if (v.size() != n) return std::string(name) + " has the wrong length";
    for (std::size_t i = 0; i < n; ++i) {
      if (bad(v[i])) return std::string(name) + "[" + std::to_string(i) + "] is not positive";
    }
    return "";
  };
  if (bad(beta)) return "beta is not positive";
  if (bad(tau)) return "tau is not positive";
  const bool local = family != PriorFamily::GL;
  for (const auto& msg :
       {bad_block(lambda, "lambda", true), bad_block(nu, "nu", local),
        bad_block(t, "t", family == PriorFamily::SB), bad_block(s, "s", family == PriorFamily::IRB),
        bad_block(w, "w", family == PriorFamily::IRB),
        bad_block(z, "z", family == PriorFamily::IRB)}) {
    if (!msg.empty()) return msg;
  }
  return "";
}

void MhTracker::record(bool accepted, bool fallback, bool adapting) {
  ++proposals;
  accepts += accepted ? 1 : 0;
  fallbacks += fallback ? 1 : 0;
  if (!adapting) return;
  ++window_proposals;
  window_accepts += accepted ? 1 : 0;
  if (window_proposals == kAdaptWindow) {
    widen = static_cast<double>(window_accepts) / kAdaptWindow < kWidenBelow;
    window_proposals = 0;
    window_accepts = 0;
  }
}

namespace {

// λ_i ~ IG(1 + δ_i + ν_i, δ_i y_i/η_i + β ν_i).
void update_lambda(ChainState& st, std::span<const Observation> data, const SweepContext& ctx,
                   RngHandle& rng) {
  const bool global_only = st.nu.empty();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double nu = global_only ? st.tau : st.nu[i];
    const InverseGammaParams ig = conditional_lambda_posterior(data[i], nu, st.beta);
    st.lambda[i] = require_draw(sample_inverse_gamma(ig.shape, ig.scale, rng),
                                static_cast<long>(i), "lambda", ctx.sweep);
  }
}

// β ~ Ga(Σν_i + n + a_β, Σν_i/λ_i + b_β).
void update_beta(ChainState& st, const PriorSpec& prior, const SweepContext& ctx,
                 RngHandle& rng) {
  if (prior.beta.is_fixed()) return;
  const std::size_t n = st.lambda.size();
  double sum_nu = 0.0;
  double sum_ratio = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double nu = st.nu.empty() ? st.tau : st.nu[i];
    sum_nu += nu;
    sum_ratio += nu / st.lambda[i];
  }
  st.beta = require_draw(sample_gamma(sum_nu + static_cast<double>(n) + prior.beta.shape,
                                      sum_ratio + prior.beta.rate, rng),
                         -1, "beta", ctx.sweep);
}

void update_nu(ChainState& st, std::size_t i, const ShapeTarget& target, SweepContext& ctx,
               RngHandle& rng) {
  MhTracker& tr = ctx.nu_mh[i];
  const MhResult r = miller_mh_update(target, st.nu[i], ctx.miller, tr.widen, rng);
  tr.record(r.accepted, r.fallback, ctx.adapting);
  st.nu[i] = require_draw(r.value, static_cast<long>(i), "nu", ctx.sweep);
}

double weighted_mean_scaled(std::span<const Observation> data) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& o : data) {
    num += o.delta * o.scaled();
    den += o.delta;
  }
  return num / den;
}

}  // namespace

ChainState initial_state(std::span<const Observation> data, const PriorSpec& prior,
                         RngHandle& rng) {
  const std::size_t n = data.size();
  ChainState st;
  st.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.lambda[i] = data[i].scaled();
  st.beta = prior.beta.is_fixed() ? prior.beta.value : weighted_mean_scaled(data);
  st.tau = prior.tau.is_fixed() ? prior.tau.value : 1.0;
  if (prior.family == PriorFamily::GL) return st;

  st.nu.assign(n, st.tau);  // u_i = 1
  if (prior.family == PriorFamily::SB) {
    st.t.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      st.t[i] = sample_gamma(prior.a + prior.b, 1.0 + st.nu[i] / st.tau, rng);
    }
  } else {
    st.s.resize(n);
    st.w.resize(n);
    st.z.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double l = std::log1p(st.tau / st.nu[i]);
      st.s[i] = sample_gamma(1.0 - prior.b, l, rng);
      st.w[i] = sample_gamma(prior.b + prior.a, 1.0 + l, rng);
      st.z[i] = sample_gamma(st.s[i] + st.w[i] + 1.0, 1.0 + st.nu[i] / st.tau, rng);
    }
  }
  return st;
}

void gibbs_sweep_sb(ChainState& st, std::span<const Observation> data, const PriorSpec& prior,
                    SweepContext& ctx, RngHandle& rng) {
  const std::size_t n = data.size();
  update_lambda(st, data, ctx, rng);
  update_beta(st, prior, ctx, rng);
  if (!prior.tau.is_fixed()) {
    // τ ~ GIG(-n a + a_τ, 2 b_τ, 2 Σ t_i ν_i).
    double sum_tnu = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum_tnu += st.t[i] * st.nu[i];
    const GigParams gig{prior.tau.shape - static_cast<double>(n) * prior.a, 2.0 * prior.tau.rate,
                        2.0 * sum_tnu};
    st.tau = require_draw(sample_gig(gig, rng), -1, "tau", ctx.sweep);
  }
  for (std::size_t i = 0; i < n; ++i) {
    st.t[i] = require_draw(sample_gamma(prior.a + prior.b, 1.0 + st.nu[i] / st.tau, rng),
                           static_cast<long>(i), "t", ctx.sweep);
  }
  for (std::size_t i = 0; i < n; ++i) {
    update_nu(st, i, sb_nu_target(st.t[i], st.tau, st.beta, st.lambda[i], prior.a), ctx, rng);
  }
}

void gibbs_sweep_irb(ChainState& st, std::span<const Observation> data, const PriorSpec& prior,
                     SweepContext& ctx, RngHandle& rng) {
  const std::size_t n = data.size();
  update_lambda(st, data, ctx, rng);
  update_beta(st, prior, ctx, rng);
  if (!prior.tau.is_fixed()) {
    // τ ~ GIG(-Σ(s_i + w_i) + a_τ, 2 b_τ, 2 Σ z_i ν_i).
    double sum_sw = 0.0;
    double sum_znu = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum_sw += st.s[i] + st.w[i];
      sum_znu += st.z[i] * st.nu[i];
    }
    const GigParams gig{prior.tau.shape - sum_sw, 2.0 * prior.tau.rate, 2.0 * sum_znu};
    st.tau = require_draw(sample_gig(gig, rng), -1, "tau", ctx.sweep);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double l = std::log1p(st.tau / st.nu[i]);
    const long unit = static_cast<long>(i);
    st.s[i] = require_draw(sample_gamma(1.0 - prior.b, l, rng), unit, "s", ctx.sweep);
    st.w[i] = require_draw(sample_gamma(prior.b + prior.a, 1.0 + l, rng), unit, "w", ctx.sweep);
  }
  for (std::size_t i = 0; i < n; ++i) {
    st.z[i] = require_draw(sample_gamma(st.s[i] + st.w[i] + 1.0, 1.0 + st.nu[i] / st.tau, rng),
                           static_cast<long>(i), "z", ctx.sweep);
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Ga(ν | s + w, z/τ) times the λ likelihood.
    const ShapeTarget target{st.s[i] + st.w[i], st.z[i] / st.tau + rho(st.beta / st.lambda[i]),
                             1.0};
    update_nu(st, i, target, ctx, rng);
  }
}

void gibbs_sweep_gl(ChainState& st, std::span<const Observation> data, const PriorSpec& prior,
                    SweepContext& ctx, RngHandle& rng) {
  update_lambda(st, data, ctx, rng);
  update_beta(st, prior, ctx, rng);
  if (prior.tau.is_fixed()) return;
  double rate = prior.tau.rate;
  for (double lam : st.lambda) rate += rho(st.beta / lam);
  const ShapeTarget target{prior.tau.shape, rate, static_cast<double>(data.size())};
  const MhResult r = miller_mh_update(target, st.tau, ctx.miller, ctx.tau_mh.widen, rng);
  ctx.tau_mh.record(r.accepted, r.fallback, ctx.adapting);
  st.tau = require_draw(r.value, -1, "tau", ctx.sweep);
}

void gibbs_sweep(ChainState& st, std::span<const Observation> data, const PriorSpec& prior,
                 SweepContext& ctx, RngHandle& rng) {
  switch (prior.family) {
    case PriorFamily::SB:
      gibbs_sweep_sb(st, data, prior, ctx, rng);
      break;
    case PriorFamily::IRB:
      gibbs_sweep_irb(st, data, prior, ctx, rng);
      break;
    case PriorFamily::GL:
      gibbs_sweep_gl(st, data, prior, ctx, rng);
      break;
  }
  ++ctx.sweep;
}

std::vector<double> ChainOutput::lambda_draws(std::size_t unit) const {
  std::vector<double> out(draws);
  for (std::size_t d = 0; d < draws; ++d) out[d] = lambda[d * n + unit];
  return out;
}

std::vector<double> ChainOutput::kappa_draws(std::size_t unit) const {
  std::vector<double> out(draws);
  for (std::size_t d = 0; d < draws; ++d) out[d] = kappa[d * n + unit];
  return out;
}

namespace {

std::vector<double> acceptance_rates(const SweepContext& ctx) {
  std::vector<double> out;
  out.reserve(ctx.nu_mh.size());
  for (const auto& tr : ctx.nu_mh) out.push_back(tr.rate());
  return out;
}

void fill_diagnostics(ChainOutput& out) {
  out.ess_lambda.resize(out.n);
  out.ess_kappa.resize(out.n);
  for (std::size_t i = 0; i < out.n; ++i) {
    out.ess_lambda[i] = effective_sample_size(out.lambda_draws(i));
    out.ess_kappa[i] = effective_sample_size(out.kappa_draws(i));
  }
  out.ess_beta = effective_sample_size(out.beta);
  out.ess_tau = effective_sample_size(out.tau);
}

}  // namespace

ChainOutput run_chain(std::span<const Observation> data, const PriorSpec& prior,
                      const McmcConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  prior.validate();
  validate(data);
  if (prior.family == PriorFamily::IRB && !(prior.b < 1.0)) {
    throw std::invalid_argument("the IRB sampler needs b < 1");
  }

  const std::size_t n = data.size();
  RngHandle rng(cfg.seed, stream);
  ChainState st = initial_state(data, prior, rng);
  SweepContext ctx;
  ctx.miller = cfg.miller();
  if (prior.family != PriorFamily::GL) ctx.nu_mh.resize(n);

  ChainOutput out;
  out.family = prior.family;
  out.n = n;
  out.draws = static_cast<std::size_t>(cfg.samples);
  out.lambda.reserve(out.draws * n);
  out.kappa.reserve(out.draws * n);
  out.beta.reserve(out.draws);
  out.tau.reserve(out.draws);

  const long total = static_cast<long>(cfg.burnin) + static_cast<long>(cfg.samples) * cfg.thin;
  try {
    for (long it = 0; it < total; ++it) {
      ctx.adapting = it < cfg.burnin;
      gibbs_sweep(st, data, prior, ctx, rng);
      const long post = it - cfg.burnin + 1;
      if (post <= 0 || post % cfg.thin != 0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const double nu = st.nu.empty() ? st.tau : st.nu[i];
        out.lambda.push_back(st.lambda[i]);
        out.kappa.push_back(nu / (data[i].delta + nu));
      }
      out.beta.push_back(st.beta);
      out.tau.push_back(st.tau);
    }
  } catch (ChainError& e) {
    e.partial_acceptance = acceptance_rates(ctx);
    throw;
  }

  out.acceptance_rate = acceptance_rates(ctx);
  out.tau_acceptance_rate = prior.family == PriorFamily::GL && !prior.tau.is_fixed()
                                ? ctx.tau_mh.rate()
                                : std::numeric_limits<double>::quiet_NaN();
  for (const auto& tr : ctx.nu_mh) out.fallback_proposals += tr.fallbacks;
  out.fallback_proposals += ctx.tau_mh.fallbacks;

  for (std::size_t i = 0; i < out.acceptance_rate.size(); ++i) {
    if (out.acceptance_rate[i] < kWarnBelow) {
      out.warnings.push_back("low nu acceptance rate " + std::to_string(out.acceptance_rate[i]) +
                             " for unit " + std::to_string(i));
    }
  }
  if (out.tau_acceptance_rate < kWarnBelow) {
    out.warnings.push_back("low tau acceptance rate " + std::to_string(out.tau_acceptance_rate));
  }
  fill_diagnostics(out);
  return out;
}

ChainOutput run_chains(std::span<const Observation> data, const PriorSpec& prior,
                       const McmcConfig& cfg, int chains) {
  if (chains < 1) throw std::invalid_argument("need at least one chain");
  if (chains == 1) return run_chain(data, prior, cfg, 0);

  std::vector<ChainOutput> outs(chains);
  std::vector<std::exception_ptr> errors(chains);
  {
    std::vector<std::jthread> workers;
    for (int c = 0; c < chains; ++c) {
      workers.emplace_back([&, c] {
        try {
          outs[c] = run_chain(data, prior, cfg, static_cast<std::uint64_t>(c));
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ChainOutput pooled = outs[0];
  pooled.acceptance_rate.assign(pooled.n, 0.0);
  double tau_rate = 0.0;
  for (int c = 1; c < chains; ++c) {
    const ChainOutput& o = outs[c];
    pooled.lambda.insert(pooled.lambda.end(), o.lambda.begin(), o.lambda.end());
    pooled.kappa.insert(pooled.kappa.end(), o.kappa.begin(), o.kappa.end());
    pooled.beta.insert(pooled.beta.end(), o.beta.begin(), o.beta.end());
    pooled.tau.insert(pooled.tau.end(), o.tau.begin(), o.tau.end());
    pooled.draws += o.draws;
    pooled.fallback_proposals += o.fallback_proposals;
    pooled.warnings.insert(pooled.warnings.end(), o.warnings.begin(), o.warnings.end());
  }
  for (const auto& o : outs) {
    for (std::size_t i = 0; i < o.acceptance_rate.size(); ++i) {
      pooled.acceptance_rate[i] += o.acceptance_rate[i] / chains;
    }
    tau_rate += o.tau_acceptance_rate / chains;
  }
  if (outs[0].acceptance_rate.empty()) pooled.acceptance_rate.clear();
  pooled.tau_acceptance_rate = tau_rate;
  // ESS of pooled draws: sum of per-chain values, since chains are independent.
  for (std::size_t i = 0; i < pooled.n; ++i) {
    pooled.ess_lambda[i] = 0.0;
    pooled.ess_kappa[i] = 0.0;
    for (const auto& o : outs) {
      pooled.ess_lambda[i] += o.ess_lambda[i];
      pooled.ess_kappa[i] += o.ess_kappa[i];
    }
  }
  pooled.ess_beta = 0.0;
  pooled.ess_tau = 0.0;
  for (const auto& o : outs) {
    pooled.ess_beta += o.ess_beta;
    pooled.ess_tau += o.ess_tau;
  }
  return pooled;
}

ScalarSummary summarize_scalar(std::span<const double> draws, double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("level must lie in (0, 1)");
  if (draws.size() < 10) throw std::invalid_argument("need at least 10 stored draws");
  const double tail = 0.5 * (1.0 - level);
  return {mean(draws), variance(draws), quantile(draws, tail), quantile(draws, 1.0 - tail)};
}

std::vector<PosteriorSummary> summarize(const ChainOutput& output, double level) {
  std::vector<PosteriorSummary> out;
  out.reserve(output.n);
  for (std::size_t i = 0; i < output.n; ++i) {
    const std::vector<double> lam = output.lambda_draws(i);
    const ScalarSummary s = summarize_scalar(lam, level);
    const double ess = output.ess_lambda.empty() ? effective_sample_size(lam) : output.ess_lambda[i];
    out.push_back({s.mean, s.variance, s.lower, s.upper, mean(output.kappa_draws(i)),
                   std::sqrt(s.variance / ess)});
  }
  return out;
}

}  // namespace gammashrink
