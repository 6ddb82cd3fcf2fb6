#pragma once

#include "gammashrink/errors.hpp"
#include "gammashrink/rng.hpp"

#include <cmath>
#include <string>

namespace gammashrink {

struct LogDensityDerivs {
  double f;
  double d1;
  double d2;
};

// Unnormalized log density on (0, ∞) of the form
//   f(x) = (c - 1) ln x - rate x + m (x ln x - x - ln Γ(x)).
// Every shape-type full conditional in the samplers reduces to this: the ν
// conditionals have m = 1, and the global-only τ conditional has m = n.
struct ShapeTarget {
  double c = 1.0;
  double rate = 1.0;
  double m = 1.0;

  LogDensityDerivs eval(double x) const;
  double log_density(double x) const;
};

// ν conditional under the scaled beta prior given the latent t:
//   (a - 1) ln ν - (t/τ) ν + ν ln(βν) - ln Γ(ν) - ν ln λ - βν/λ.
// Returned with exactly these terms (no constants dropped beyond those shown).
LogDensityDerivs nu_logpdf_sb(double nu, double t, double tau, double beta, double lambda,
                              double a);
// The same conditional regrouped as a ShapeTarget; the two agree in value.
ShapeTarget sb_nu_target(double t, double tau, double beta, double lambda, double a);

struct MillerOptions {
  double tol = 1e-8;
  int max_iter = 50;
};

struct GammaApprox {
  enum class Status { Converged, NotConverged, Degenerate };
  double shape = 1.0;
  double rate = 1.0;
  int iterations = 0;
  Status status = Status::Converged;

  bool ok() const { return status == Status::Converged; }
};

// Fits Ga(shape, rate) to a log density by matching its first and second
// derivatives at the current mean and iterating the mean to the fitted
// A / B. d1 and d2 are callables returning f' and f''. Non-finite derivatives
// raise NumericError; A <= 1 or B <= 0 ends the iteration as Degenerate.
template <class D1, class D2>
GammaApprox miller_gamma_approx(D1&& d1, D2&& d2, double init_mean, const MillerOptions& opt) {
  if (!(init_mean > 0.0) || !std::isfinite(init_mean)) {
    throw NumericError("miller_gamma_approx: initial mean must be positive", init_mean, 0.0);
  }
  GammaApprox out;
  double mu = init_mean;
  double prev_a = 0.0;
  double prev_b = 0.0;
  for (int it = 1; it <= opt.max_iter; ++it) {
    const double g1 = d1(mu);
    const double g2 = d2(mu);
    if (!std::isfinite(g1) || !std::isfinite(g2)) {
      throw NumericError("miller_gamma_approx: non-finite derivative at " + std::to_string(mu), mu,
                         0.0);
    }
    const double a = 1.0 - mu * mu * g2;
    const double b = (a - 1.0) / mu - g1;
    out.shape = a;
    out.rate = b;
    out.iterations = it;
    if (!(a > 1.0 + 1e-12) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      out.status = GammaApprox::Status::Degenerate;
      return out;
    }
    if (it > 1 && std::abs(std::log(a / prev_a)) < opt.tol &&
        std::abs(std::log(b / prev_b)) < opt.tol) {
      out.status = GammaApprox::Status::Converged;
      return out;
    }
    prev_a = a;
    prev_b = b;
    mu = a / b;
  }
  out.status = GammaApprox::Status::NotConverged;
  return out;
}

GammaApprox miller_gamma_approx(const ShapeTarget& target, double init_mean,
                                const MillerOptions& opt);

// Gamma proposal actually used for a target, including the fallbacks when the
// Miller fit fails. `widen` requests a wider proposal with the same mode.
struct Proposal {
  double shape;
  double rate;
  bool fallback;
};

Proposal make_proposal(const ShapeTarget& target, double init_mean, const MillerOptions& opt,
                       bool widen);

struct MhResult {
  double value;
  bool accepted;
  bool fallback;
};

// One Metropolis-Hastings update of x targeting `target` with the Miller
// gamma proposal warm-started at the current value. A converged fit barely
// depends on its starting point, so this is in effect an independence
// sampler; the reverse proposal is still rebuilt from the candidate so the
// acceptance ratio is exact even when the fit falls back.
MhResult miller_mh_update(const ShapeTarget& target, double current, const MillerOptions& opt,
                          bool widen, RngHandle& rng);

}  // namespace gammashrink
