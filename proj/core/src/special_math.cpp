#include "gammashrink/special_math.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gammashrink {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(what) + ": argument must be positive and finite, got " +
                            std::to_string(x));
  }
}

// Asymptotic series of the Stirling remainder, valid to ~1e-17 for x >= 10.
double stirling_series(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 / 156.0))))));
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return boost::math::lgamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  if (x < 1e-8) return boost::math::digamma(x + 1.0) - 1.0 / x;
  return boost::math::digamma(x);
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  if (x < 1e-8) return boost::math::trigamma(x + 1.0) + 1.0 / (x * x);
  return boost::math::trigamma(x);
}

double polygamma(int order, double x) {
  switch (order) {
    case 0:
      return digamma(x);
    case 1:
      return trigamma(x);
    default:
      throw std::domain_error("polygamma: only orders 0 and 1 are supported");
  }
}

double stirling_remainder(double x) {
  require_positive(x, "stirling_remainder");
  if (x >= 10.0) return stirling_series(x);
  return boost::math::lgamma(x) - (x - 0.5) * std::log(x) + x - kHalfLog2Pi;
}

double log_gamma_ratio(double x, double a) {
  require_positive(x, "log_gamma_ratio");
  require_positive(x + a, "log_gamma_ratio");
  const double xa = x + a;
  if (x >= 10.0 && xa >= 10.0) {
    return (x - 0.5) * std::log1p(a / x) + a * std::log(xa) - a + stirling_series(xa) -
           stirling_series(x);
  }
  return boost::math::lgamma(xa) - boost::math::lgamma(x);
}

double log_gamma_shape_kernel(double x) {
  require_positive(x, "log_gamma_shape_kernel");
  if (x >= 10.0) return 0.5 * std::log(x) - kHalfLog2Pi - stirling_series(x);
  return x * std::log(x) - x - boost::math::lgamma(x);
}

double log_minus_digamma(double x) {
  require_positive(x, "log_minus_digamma");
  if (x >= 10.0) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return r * (0.5 + r * (1.0 / 12.0 +
                           r2 * (-1.0 / 120.0 +
                                 r2 * (1.0 / 252.0 +
                                       r2 * (-1.0 / 240.0 +
                                             r2 * (1.0 / 132.0 +
                                                   r2 * (-691.0 / 32760.0 + r2 / 12.0)))))));
  }
  return std::log(x) - digamma(x);
}

double inv_minus_trigamma(double x) {
  require_positive(x, "inv_minus_trigamma");
  if (x >= 10.0) {
    const double r = 1.0 / x;
    const double r2 = r * r;
    return -r2 * (0.5 + r * (1.0 / 6.0 +
                             r2 * (-1.0 / 30.0 +
                                   r2 * (1.0 / 42.0 +
                                         r2 * (-1.0 / 30.0 +
                                               r2 * (5.0 / 66.0 +
                                                     r2 * (-691.0 / 2730.0 + r2 * 7.0 / 6.0)))))));
  }
  return 1.0 / x - trigamma(x);
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta");
  require_positive(b, "log_beta");
  return boost::math::lgamma(a) + boost::math::lgamma(b) - boost::math::lgamma(a + b);
}

double gamma_cdf(double x, double shape, double rate) {
  require_positive(shape, "gamma_cdf");
  require_positive(rate, "gamma_cdf");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(shape, rate * x);
}

double gamma_quantile(double p, double shape, double rate) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gamma_quantile: probability must lie in (0, 1)");
  }
  require_positive(shape, "gamma_quantile");
  require_positive(rate, "gamma_quantile");
  return boost::math::gamma_p_inv(shape, p) / rate;
}

double rho_offset(double d) {
  if (!(d > -1.0)) throw std::domain_error("rho_offset: requires d > -1");
  if (std::abs(d) < 1e-2) {
    // sum_{k>=2} (-d)^k / k, truncated where terms drop below 1e-28.
    double term = d * d;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 2; k <= 16; ++k) {
      sum += sign * term / k;
      term *= d;
      sign = -sign;
    }
    return sum;
  }
  return d - std::log1p(d);
}

double rho(double x) {
  require_positive(x, "rho");
  if (std::abs(x - 1.0) < 1e-2) return rho_offset(x - 1.0);
  return x - 1.0 - std::log(x);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double phi(double u) {
  require_positive(u, "phi");
  if (u < 1e-12) return u * (-std::log(u) + std::log1p(u));
  return u * std::log1p(1.0 / u);
}

double phi_derivative(double u) {
  require_positive(u, "phi_derivative");
  if (u < 1e-12) return -std::log(u) + std::log1p(u) - 1.0 / (1.0 + u);
  return std::log1p(1.0 / u) - 1.0 / (1.0 + u);
}

double phi_inv(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::domain_error("phi_inv: argument must lie in (0, 1)");

  double lo = 1e-300;
  double hi = 1e300;
  double u = v > 0.5 ? 0.5 / (1.0 - v) : v / std::log(1.0 / v);
  u = std::clamp(u, lo, hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double r = phi(u) - v;
    if (r == 0.0) return u;
    if (r < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    double next = u - r / phi_derivative(u);
    if (!(next > lo && next < hi)) {
      // Bisect geometrically; the bracket spans hundreds of decades.
      next = std::sqrt(lo) * std::sqrt(hi);
    }
    if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * u) return next;
    u = next;
  }
  return u;
}

double kappa_star(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw std::domain_error("kappa_star: requires y > 1");
  return y * phi_inv(1.0 / y);
}

}  // namespace gammashrink
