#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {

namespace bq = boost::math::quadrature;

double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
              double tol, bool log_scale) {
  const bool increasing = f(hi) > f(lo);
  for (int i = 0; i < 4000 && hi - lo > tol * (log_scale ? lo : 1.0); ++i) {
    const double mid = log_scale ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if ((f(mid) < target) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return log_scale ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
}

double phi_inv(double v) {
  auto phi = [](double u) { return u * std::log1p(1.0 / u); };
  return bisect(phi, v, 1e-300, 1e300, 1e-15, true);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  // Kolmogorov limit with the Stephens small-sample correction.
  const double sn = std::sqrt(static_cast<double>(n));
  const double t = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double chi_square_pvalue(std::span<const double> sample, const std::function<double(double)>& cdf,
                         int bins) {
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  for (double x : sample) {
    const double u = std::clamp(cdf(x), 0.0, 1.0 - 1e-15);
    counts[static_cast<std::size_t>(u * bins)] += 1.0;
  }
  const double expected = static_cast<double>(sample.size()) / bins;
  double stat = 0.0;
  for (double c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(bins - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (std::isinf(hi)) {
    bq::exp_sinh<double> es;
    return es.integrate([&](double x) { return f(lo + x); }, tol);
  }
  double err = 0.0;
  return bq::gauss_kronrod<double, 31>::integrate(f, lo, hi, 30, tol, &err);
}

LogScaleCdf::LogScaleCdf(const std::function<double(double)>& log_density, int cells) {
  auto h = [&](double v) { return log_density(v) + v; };
  double peak = -std::numeric_limits<double>::infinity();
  for (double v = -700.0; v <= 700.0; v += 0.01) peak = std::max(peak, h(v));
  double lo = 700.0;
  double hi = -700.0;
  for (double v = -700.0; v <= 700.0; v += 0.01) {
    if (h(v) > peak - 80.0) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  lo_ = lo - 0.5;
  step_ = (hi + 0.5 - lo_) / cells;
  cum_.assign(static_cast<std::size_t>(cells) + 1, 0.0);
  auto g = [&](double v) { return std::exp(h(v) - peak); };
  for (int i = 0; i < cells; ++i) {
    const double a = lo_ + i * step_;
    cum_[i + 1] = cum_[i] + bq::gauss<double, 10>::integrate(g, a, a + step_);
  }
  const double total = cum_.back();
  for (double& c : cum_) c /= total;
}

double LogScaleCdf::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double t = (std::log(x) - lo_) / step_;
  if (t <= 0.0) return 0.0;
  const auto i = static_cast<std::size_t>(t);
  if (i + 1 >= cum_.size()) return 1.0;
  const double f = t - static_cast<double>(i);
  return cum_[i] + f * (cum_[i + 1] - cum_[i]);
}

double gig_density_unnormalized(double x, double p, double b, double gamma) {
  return std::exp((p - 1.0) * std::log(x) - 0.5 * (b * x + gamma / x));
}

double irb_augmented_integral(double u, double b, double a) {
  // Integrand of the (s, w, z) representation, with s = r² to remove the
  // s^{-b} endpoint singularity.
  bq::exp_sinh<double> outer;
  bq::exp_sinh<double> middle;
  bq::exp_sinh<double> inner;
  const double lgb = boost::math::lgamma(1.0 - b);
  const double lga = boost::math::lgamma(b + a);
  auto over_s = [&](double r) {
    const double s = r * r;
    auto over_w = [&](double w) {
      const double k = s + w;
      const double lg = boost::math::lgamma(k + 1.0);
      // All factors go into one exponent so nothing overflows separately.
      const double base =
          (b + a - 1.0) * std::log(w) - w - lga + (k - 1.0) * std::log(u) - lg - lgb;
      auto over_z = [&](double z) {
        if (z <= 0.0) return 0.0;
        return std::exp(base + k * std::log(z) - z * (1.0 + u));
      };
      if (w <= 0.0) return 0.0;
      return inner.integrate(over_z, 1e-11);
    };
    // ds = 2r dr, and s^{-b} 2r = 2 r^{1-2b}.
    return 2.0 * std::pow(r, 1.0 - 2.0 * b) * middle.integrate(over_w, 1e-11);
  };
  return outer.integrate(over_s, 1e-10);
}

double ig_density(double x, double shape, double scale) {
  return std::exp(shape * std::log(scale) - boost::math::lgamma(shape) - (shape + 1.0) * std::log(x) -
                  scale / x);
}

double beta_prime_density(double u, double a, double b) {
  return std::pow(u, a - 1.0) * std::pow(1.0 + u, -a - b) / boost::math::beta(a, b);
}

}  // namespace oracle
