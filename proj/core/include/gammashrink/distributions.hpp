#pragma once

#include "gammashrink/rng.hpp"

namespace gammashrink {

// Generalized inverse Gaussian with density proportional to
//   x^{p-1} exp(-b x / 2 - gamma / (2 x)),  x > 0.
// Integrable when b > 0 and gamma > 0 (any p), gamma == 0 with p > 0 and
// b > 0, or b == 0 with p < 0 and gamma > 0.
struct GigParams {
  double p = 1.0;
  double b = 1.0;
  double gamma = 1.0;

  bool valid() const;
};

// Ga(shape, rate), mean shape / rate.
double sample_gamma(double shape, double rate, RngHandle& rng);
// Natural log of a Ga(shape, 1) draw. Finite even for shapes where the draw
// itself underflows.
double sample_log_gamma(double shape, RngHandle& rng);
// IG(shape, scale): the reciprocal of a Ga(shape, scale) draw.
double sample_inverse_gamma(double shape, double scale, RngHandle& rng);
double sample_gig(const GigParams& params, RngHandle& rng);

double sample_normal(RngHandle& rng);
double sample_student_t(double df, RngHandle& rng);

// Beta prime (scaled beta) draw: x / (1 - x) with x ~ Beta(a, b).
double sample_sb(double a, double b, RngHandle& rng);
// Inverse rescaled beta draw with density IRB(u; b, a): w ~ SB(b, a) mapped
// through u = 1 / (e^w - 1). Draws below the smallest normal double are
// clamped to it so results stay strictly positive.
double sample_irb(double b, double a, RngHandle& rng);

// Log-density of Ga(shape, rate) at x.
double gamma_log_density(double x, double shape, double rate);

}  // namespace gammashrink
