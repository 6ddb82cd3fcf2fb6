#pragma once

// Independent reference computations for the test suites. These deliberately
// avoid the library's own quadrature and root finders; everything here is
// either Boost.Math quadrature or plain bisection.

#include <functional>
#include <span>
#include <vector>

namespace oracle {

// Bisection on a monotone function to absolute tolerance tol in x.
double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
              double tol = 1e-14, bool log_scale = false);

// u ln(1 + 1/u) inverted by bisection.
double phi_inv(double v);

// One-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_pvalue(double d, std::size_t n);

// Pearson chi-square goodness of fit on equiprobable bins given by
// cdf-quantile edges; returns the p-value.
double chi_square_pvalue(std::span<const double> sample, const std::function<double(double)>& cdf,
                         int bins);

// ∫_lo^hi f by Boost Gauss-Kronrod (finite) or exp-sinh (hi = +inf).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double tol = 1e-12);

// CDF of a density on (0, ∞). The support in ln x is located by a grid
// scan, the cumulative integral is tabulated on a fine ln x grid with
// 10-point Gauss-Legendre per cell, and evaluation interpolates linearly.
class LogScaleCdf {
 public:
  // log_density takes s = ln x and returns ln p(e^s) up to a constant.
  explicit LogScaleCdf(const std::function<double(double)>& log_density, int cells = 20000);
  double operator()(double x) const;

 private:
  double lo_ = 0.0;
  double step_ = 0.0;
  std::vector<double> cum_;
};

double gig_density_unnormalized(double x, double p, double b, double gamma);

// Triple integral over (s, w, z) of the augmented IRB representation,
// multiplied out to give B(b, a)·IRB(u | b, a).
double irb_augmented_integral(double u, double b, double a);

// Independent closed forms used by the model and oracle tests.
double ig_density(double x, double shape, double scale);
double beta_prime_density(double u, double a, double b);

}  // namespace oracle
