#pragma once

#include "gammashrink/errors.hpp"

#include <functional>
#include <vector>

namespace gammashrink {

struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (7/15) on [lo, hi]. Interior breakpoints
// seed the initial partition. Throws NumericError if the tolerance is not met
// within cfg.max_subdivisions intervals.
QuadResult integrate(const Integrand& f, double lo, double hi, const QuadConfig& cfg,
                     const std::vector<double>& breakpoints = {});

// Integral of exp(log_f(s)) over [lo, hi] for integrands whose magnitude can
// exceed the double range. The log-integrand is scanned on a grid, its peak
// refined by golden-section search, and the integral evaluated relative to
// the peak. Returns ln of the integral; rel_error is the relative error
// estimate. A log integrand of -inf everywhere yields log_value = -inf.
struct LogQuadResult {
  double log_value = 0.0;
  double rel_error = 0.0;
  double peak = 0.0;  // abscissa of the largest log-integrand value
};

using LogIntegrand = std::function<double(double)>;

LogQuadResult integrate_exp_log(const LogIntegrand& log_f, double lo, double hi,
                                const QuadConfig& cfg, double grid_step = 0.25);

}  // namespace gammashrink
