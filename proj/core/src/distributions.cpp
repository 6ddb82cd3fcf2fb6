#include "gammashrink/distributions.hpp"

#include "gammashrink/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gammashrink {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::domain_error(message);
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

// Marsaglia & Tsang squeeze method, shape >= 1, unit rate.
double gamma_unit_large_shape(double shape, RngHandle& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = sample_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// Location of the mode of y^{lambda-1} exp(-omega (y + 1/y) / 2).
double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// The three samplers below draw from the standardized density
//   y^{lambda-1} exp(-omega (y + 1/y) / 2),  lambda >= 0, omega > 0
// following Hörmann & Leydold (2014).

double gig_rou_noshift(double lambda, double omega, RngHandle& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym =
      ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * rng.uniform_open();
    const double v = rng.uniform_open();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

double gig_rou_shift(double lambda, double omega, RngHandle& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Extremes of (x - xm) sqrt(f(x)) are the roots of a cubic; solve the
  // depressed form with the trigonometric rule.
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;

  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform_open();
    const double x = u / v + xm;
    if (x <= 0.0) continue;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Piecewise constant / power / exponential hat; lambda < 1, omega <= 1.
double gig_piecewise_hat(double lambda, double omega, RngHandle& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);

  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  double area[3];
  area[0] = k0 * x0;

  double k1;
  double k2;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    area[1] = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area[1] = lambda == 0.0 ? k1 * std::log(2.0 / (omega * omega))
                            : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area[0] + area[1] + area[2];

  for (;;) {
    double v = total * rng.uniform_open();
    double x;
    double hx;
    if (v <= area[0]) {
      x = x0 * v / area[0];
      hx = k0;
    } else if ((v -= area[0]) <= area[1]) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area[1];
      const double left = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * left) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    const double u = rng.uniform_open() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

}  // namespace

bool GigParams::valid() const {
  if (!std::isfinite(p) || !(b >= 0.0) || !(gamma >= 0.0)) return false;
  if (!std::isfinite(b) || !std::isfinite(gamma)) return false;
  if (b > 0.0 && gamma > 0.0) return true;
  if (gamma == 0.0) return p > 0.0 && b > 0.0;
  return p < 0.0 && gamma > 0.0;  // b == 0
}

double sample_normal(RngHandle& rng) {
  // Marsaglia polar method; the second variate is discarded so that draws
  // depend only on the generator state.
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double sample_student_t(double df, RngHandle& rng) {
  require(positive_finite(df), "sample_student_t: degrees of freedom must be positive");
  const double z = sample_normal(rng);
  const double chi2 = 2.0 * sample_gamma(0.5 * df, 1.0, rng);
  return z / std::sqrt(chi2 / df);
}

double sample_log_gamma(double shape, RngHandle& rng) {
  require(positive_finite(shape), "sample_log_gamma: shape must be positive");
  if (shape >= 1.0) return std::log(gamma_unit_large_shape(shape, rng));
  // Ga(a) = Ga(a + 1) * U^{1/a}.
  const double g = gamma_unit_large_shape(shape + 1.0, rng);
  return std::log(g) + std::log(rng.uniform_open()) / shape;
}

double sample_gamma(double shape, double rate, RngHandle& rng) {
  require(positive_finite(shape) && positive_finite(rate),
          "sample_gamma: shape and rate must be positive");
  double x;
  if (shape >= 1.0) {
    x = gamma_unit_large_shape(shape, rng) / rate;
  } else {
    x = std::exp(sample_log_gamma(shape, rng) - std::log(rate));
  }
  return std::max(x, std::numeric_limits<double>::min());
}

double sample_inverse_gamma(double shape, double scale, RngHandle& rng) {
  require(positive_finite(shape) && positive_finite(scale),
          "sample_inverse_gamma: shape and scale must be positive");
  return 1.0 / sample_gamma(shape, scale, rng);
}

double sample_gig(const GigParams& params, RngHandle& rng) {
  require(params.valid(), "sample_gig: non-integrable parameter combination");
  const double p = params.p;
  const double chi = params.gamma;
  const double psi = params.b;

  if (chi == 0.0) return sample_gamma(p, psi / 2.0, rng);
  if (psi == 0.0) return sample_inverse_gamma(-p, chi / 2.0, rng);

  const double lambda = std::abs(p);
  const double omega = std::sqrt(psi * chi);
  const double alpha = std::sqrt(chi / psi);

  double y;
  if (lambda > 2.0 || omega > 3.0) {
    y = gig_rou_shift(lambda, omega, rng);
  } else if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    y = gig_rou_noshift(lambda, omega, rng);
  } else {
    y = gig_piecewise_hat(lambda, omega, rng);
  }
  // x ~ GIG(p, psi, chi) iff 1/x ~ GIG(-p, chi, psi); in standardized form
  // this is y -> 1/y.
  return p < 0.0 ? alpha / y : alpha * y;
}

double sample_sb(double a, double b, RngHandle& rng) {
  require(positive_finite(a) && positive_finite(b), "sample_sb: a and b must be positive");
  // x / (1 - x) with x = G_a / (G_a + G_b) is G_a / G_b; work in logs so
  // small shapes do not underflow to 0 / 0.
  const double log_ratio = sample_log_gamma(a, rng) - sample_log_gamma(b, rng);
  return std::clamp(std::exp(log_ratio), std::numeric_limits<double>::min(),
                    std::numeric_limits<double>::max());
}

double sample_irb(double b, double a, RngHandle& rng) {
  require(positive_finite(a) && positive_finite(b), "sample_irb: a and b must be positive");
  const double log_w = sample_log_gamma(b, rng) - sample_log_gamma(a, rng);
  const double w = std::exp(log_w);
  double u;
  if (w < 1e-8) {
    // 1 / expm1(w) = 1/w - 1/2 + w/12 - ...
    u = std::exp(-log_w) - 0.5;
  } else if (w > 30.0) {
    u = std::exp(-w) / (-std::expm1(-w));
  } else {
    u = 1.0 / std::expm1(w);
  }
  return std::clamp(u, std::numeric_limits<double>::min(), std::numeric_limits<double>::max());
}

double gamma_log_density(double x, double shape, double rate) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x - log_gamma(shape);
}

}  // namespace gammashrink
