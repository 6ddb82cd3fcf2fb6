#include "gammashrink/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <utility>

namespace gammashrink {

namespace {

// Kronrod 15-point abscissae and weights with the embedded 7-point Gauss rule
// (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

double checked(const Integrand& f, double x) {
  const double v = f(x);
  if (std::isnan(v)) {
    std::ostringstream msg;
    msg << "integrand returned NaN at x=" << x;
    throw NumericError(msg.str(), std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::infinity());
  }
  return v;
}

Segment kronrod15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, centre);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, centre - dx);
    const double f2 = checked(f, centre + dx);
    kron += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

void QuadConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
}

QuadResult integrate(const Integrand& f, double lo, double hi, const QuadConfig& cfg,
                     const std::vector<double>& breakpoints) {
  cfg.validate();
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("integrate: need a finite interval with lo < hi");
  }

  std::vector<double> cuts{lo};
  for (double x : breakpoints) {
    if (x > lo && x < hi) cuts.push_back(x);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> segments;
  segments.reserve(cfg.max_subdivisions + cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    segments.push_back(kronrod15(f, cuts[i], cuts[i + 1]));
  }

  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::make_heap(segments.begin(), segments.end(), worse);

  auto totals = [&segments] {
    double v = 0.0;
    double e = 0.0;
    for (const auto& s : segments) {
      v += s.value;
      e += s.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    if (static_cast<int>(segments.size()) >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << lo << ", " << hi << "]: estimate " << value
          << ", error " << error;
      throw NumericError(msg.str(), value, error);
    }
    std::pop_heap(segments.begin(), segments.end(), worse);
    const Segment worst = segments.back();
    segments.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // The interval cannot be split further in double precision; accept it.
      Segment frozen = worst;
      frozen.error = 0.0;
      segments.push_back(frozen);
      std::push_heap(segments.begin(), segments.end(), worse);
    } else {
      segments.push_back(kronrod15(f, worst.a, mid));
      std::push_heap(segments.begin(), segments.end(), worse);
      segments.push_back(kronrod15(f, mid, worst.b));
      std::push_heap(segments.begin(), segments.end(), worse);
    }
    // Re-sum rather than update incrementally to keep rounding from drifting.
    std::tie(value, error) = totals();
  }
  return {value, error, static_cast<int>(segments.size())};
}

namespace {

struct Envelope {
  double peak_x;
  double peak_log;
  double lo;
  double hi;
  std::vector<double> breakpoints;
};

// Locates the peak of a log integrand and the range outside which it is
// negligible (more than 60 nats below the peak).
Envelope scan(const LogIntegrand& log_f, double lo, double hi, double step) {
  if (!(lo < hi) || !(step > 0.0)) throw std::invalid_argument("scan: bad interval");
  const int n = static_cast<int>(std::ceil((hi - lo) / step));
  std::vector<double> xs(n + 1);
  std::vector<double> ls(n + 1);
  int best = -1;
  for (int i = 0; i <= n; ++i) {
    xs[i] = i == n ? hi : lo + i * step;
    ls[i] = log_f(xs[i]);
    if (std::isnan(ls[i])) {
      std::ostringstream msg;
      msg << "log integrand returned NaN at s=" << xs[i];
      throw NumericError(msg.str(), std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::infinity());
    }
    if (ls[i] == std::numeric_limits<double>::infinity()) {
      throw NumericError("log integrand is infinite", std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity());
    }
    if (best < 0 || ls[i] > ls[best]) best = i;
  }
  Envelope env{xs[best], ls[best], lo, hi, {}};
  if (ls[best] == -std::numeric_limits<double>::infinity()) return env;

  // Golden-section refinement of the peak inside its grid cell pair.
  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, n)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = log_f(c);
  double fd = log_f(d);
  for (int it = 0; it < 80 && b - a > 1e-10; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = log_f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = log_f(d);
    }
  }
  const double xr = 0.5 * (a + b);
  const double lr = log_f(xr);
  if (lr > env.peak_log) {
    env.peak_x = xr;
    env.peak_log = lr;
  }

  const double cutoff = env.peak_log - 60.0;
  int first = best;
  int last = best;
  for (int i = 0; i <= n; ++i) {
    if (ls[i] > cutoff) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  env.lo = xs[std::max(first - 1, 0)];
  env.hi = xs[std::min(last + 1, n)];

  env.breakpoints.push_back(env.peak_x);
  for (double w : {0.5, 2.0, 8.0}) {
    env.breakpoints.push_back(env.peak_x - w);
    env.breakpoints.push_back(env.peak_x + w);
  }
  // Secondary local maxima get their own breakpoints.
  for (int i = 1; i < n; ++i) {
    if (ls[i] > cutoff && ls[i] >= ls[i - 1] && ls[i] >= ls[i + 1]) env.breakpoints.push_back(xs[i]);
  }
  return env;
}

}  // namespace

LogQuadResult integrate_exp_log(const LogIntegrand& log_f, double lo, double hi,
                                const QuadConfig& cfg, double grid_step) {
  const Envelope env = scan(log_f, lo, hi, grid_step);
  if (env.peak_log == -std::numeric_limits<double>::infinity()) {
    return {-std::numeric_limits<double>::infinity(), 0.0, env.peak_x};
  }
  const double shift = env.peak_log;
  // The shifted integrand peaks at 1, so the absolute tolerance is relative to
  // a unit-height integrand.
  const QuadResult r = integrate([&](double s) { return std::exp(log_f(s) - shift); }, env.lo,
                                 env.hi, cfg, env.breakpoints);
  if (!(r.value > 0.0)) {
    throw NumericError("integrate_exp_log: non-positive integral", r.value, r.abs_error);
  }
  return {shift + std::log(r.value), r.abs_error / r.value, env.peak_x};
}

}  // namespace gammashrink
