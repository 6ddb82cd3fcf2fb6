#include <gammashrink/distributions.hpp>
#include <gammashrink/model.hpp>
#include <gammashrink/rng.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

namespace gs = gammashrink;

namespace {

constexpr std::size_t kN = 100000;
constexpr double kAlpha = 0.01;

template <class Draw>
std::vector<double> draws(std::uint64_t seed, std::size_t n, Draw draw) {
  gs::RngHandle rng(seed, 0);
  std::vector<double> out(n);
  for (auto& x : out) x = draw(rng);
  return out;
}

double ks_p(const std::vector<double>& x, const std::function<double(double)>& cdf) {
  return oracle::ks_pvalue(oracle::ks_statistic(x, cdf), x.size());
}

double sample_mean(const std::vector<double>& x) {
  double s = 0;
  for (double v : x) s += v;
  return s / x.size();
}

}  // namespace

TEST(Rng, DeterministicAndStreamsDiffer) {
  gs::RngHandle a(7, 0), b(7, 0), c(7, 1);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  gs::RngHandle d(7, 0);
  EXPECT_NE(c.uniform(), d.uniform());
  EXPECT_NE(gs::derive_seed(1, 0), gs::derive_seed(1, 1));
  EXPECT_EQ(gs::derive_seed(1, 5), gs::derive_seed(1, 5));
}

TEST(Rng, UniformIsUniform) {
  auto x = draws(3, kN, [](gs::RngHandle& r) { return r.uniform_open(); });
  EXPECT_GT(ks_p(x, [](double u) { return u; }), kAlpha);
  for (double v : x) ASSERT_GT(v, 0.0);
}

TEST(Gamma, MeanLargeSample) {
  const std::size_t n = 1000000;
  auto x = draws(11, n, [](gs::RngHandle& r) { return gs::sample_gamma(2.0, 3.0, r); });
  const double sd = std::sqrt(2.0) / 3.0;
  EXPECT_NEAR(sample_mean(x), 2.0 / 3.0, 5 * sd / std::sqrt(double(n)));
}

TEST(Gamma, ShapeOneIsExponential) {
  auto x = draws(12, kN, [](gs::RngHandle& r) { return gs::sample_gamma(1.0, 2.5, r); });
  EXPECT_GT(ks_p(x, [](double v) { return -std::expm1(-2.5 * v); }), kAlpha);
}

TEST(Gamma, SubUnitShape) {
  const double rate = 4.0;
  auto x = draws(13, kN, [&](gs::RngHandle& r) { return gs::sample_gamma(0.1, rate, r); });
  const double sd = std::sqrt(0.1) / rate;
  EXPECT_NEAR(sample_mean(x), 0.1 / rate, 5 * sd / std::sqrt(double(kN)));
  boost::math::gamma_distribution<> g(0.1, 1.0 / rate);
  EXPECT_GT(ks_p(x, [&](double v) { return boost::math::cdf(g, v); }), kAlpha);
  for (double v : x) ASSERT_GT(v, 0.0);
}

TEST(Gamma, KsAgainstQuadratureCdf) {
  const double shape = 3.7, rate = 1.3;
  oracle::LogScaleCdf cdf([&](double s) {
    return (shape - 1.0) * s - rate * std::exp(s);  // unnormalized
  });
  auto x = draws(14, kN, [&](gs::RngHandle& r) { return gs::sample_gamma(shape, rate, r); });
  EXPECT_GT(ks_p(x, cdf), kAlpha);
}

TEST(Gamma, RejectsBadParameters) {
  gs::RngHandle r(1, 0);
  EXPECT_THROW(gs::sample_gamma(0.0, 1.0, r), std::domain_error);
  EXPECT_THROW(gs::sample_gamma(1.0, -1.0, r), std::domain_error);
  EXPECT_THROW(gs::sample_gamma(std::nan(""), 1.0, r), std::domain_error);
}

TEST(InverseGamma, MeanAndReciprocal) {
  auto x = draws(21, kN, [](gs::RngHandle& r) { return gs::sample_inverse_gamma(7.0, 36.0, r); });
  const double sd = 6.0 / std::sqrt(5.0);
  EXPECT_NEAR(sample_mean(x), 6.0, 5 * sd / std::sqrt(double(kN)));
  std::vector<double> inv;
  for (double v : x) inv.push_back(1.0 / v);
  boost::math::gamma_distribution<> g(7.0, 1.0 / 36.0);
  EXPECT_GT(ks_p(inv, [&](double v) { return boost::math::cdf(g, v); }), kAlpha);
}

TEST(InverseGamma, KsAgainstQuadratureCdf) {
  oracle::LogScaleCdf cdf([](double s) { return std::log(oracle::ig_density(std::exp(s), 2.0, 1.0)); });
  auto x = draws(22, kN, [](gs::RngHandle& r) { return gs::sample_inverse_gamma(2.0, 1.0, r); });
  EXPECT_GT(ks_p(x, cdf), kAlpha);
}

TEST(Gig, LimitingCases) {
  auto g = draws(31, kN, [](gs::RngHandle& r) { return gs::sample_gig({2.5, 3.0, 0.0}, r); });
  boost::math::gamma_distribution<> ga(2.5, 2.0 / 3.0);
  EXPECT_GT(ks_p(g, [&](double v) { return boost::math::cdf(ga, v); }), kAlpha);

  auto ig = draws(32, kN, [](gs::RngHandle& r) { return gs::sample_gig({-1.5, 0.0, 4.0}, r); });
  boost::math::gamma_distribution<> inv(1.5, 1.0 / 2.0);
  EXPECT_GT(ks_p(ig, [&](double v) { return boost::math::cdf(boost::math::complement(inv, 1.0 / v)); }),
            kAlpha);
}

TEST(Gig, InvalidCombinationsThrow) {
  gs::RngHandle r(1, 0);
  EXPECT_THROW(gs::sample_gig({-1.0, 1.0, 0.0}, r), std::domain_error);
  EXPECT_THROW(gs::sample_gig({1.0, 0.0, 1.0}, r), std::domain_error);
  EXPECT_THROW(gs::sample_gig({1.0, 0.0, 0.0}, r), std::domain_error);
}

// Each regime of the generator: ratio-of-uniforms with and without mode shift
// and the piecewise hat, plus both signs of p.
class GigRegimes : public ::testing::TestWithParam<std::tuple<double, double, double>> {};

TEST_P(GigRegimes, KsAndMoment) {
  const auto [p, b, gamma] = GetParam();
  oracle::LogScaleCdf cdf([&](double s) {
    return (p - 1.0) * s - 0.5 * (b * std::exp(s) + gamma * std::exp(-s));
  });
  auto x = draws(41, kN, [&](gs::RngHandle& r) { return gs::sample_gig({p, b, gamma}, r); });
  EXPECT_GT(ks_p(x, cdf), kAlpha);

  auto dens = [&](double v) { return oracle::gig_density_unnormalized(v, p, b, gamma); };
  const double z = oracle::integrate(dens, 0.0, INFINITY);
  const double m = oracle::integrate([&](double v) { return v * dens(v); }, 0.0, INFINITY) / z;
  EXPECT_NEAR(sample_mean(x) / m, 1.0, 0.01);
}

INSTANTIATE_TEST_SUITE_P(Regimes, GigRegimes,
                         ::testing::Values(std::make_tuple(-1.5, 2.0, 4.0),
                                           std::make_tuple(0.3, 0.05, 0.05),
                                           std::make_tuple(0.8, 0.5, 0.5),
                                           std::make_tuple(5.0, 2.0, 3.0),
                                           std::make_tuple(-9.8, 0.2, 40.0),
                                           std::make_tuple(0.0, 0.01, 0.04)));

TEST(ScaledBeta, BetaTransformAndQuadratureCdf) {
  auto x = draws(51, kN, [](gs::RngHandle& r) { return gs::sample_sb(2.0, 0.5, r); });
  std::vector<double> v;
  for (double u : x) v.push_back(u / (1.0 + u));
  boost::math::beta_distribution<> be(2.0, 0.5);
  EXPECT_GT(ks_p(v, [&](double t) { return boost::math::cdf(be, t); }), kAlpha);

  oracle::LogScaleCdf cdf([](double s) {
    return std::log(oracle::beta_prime_density(std::exp(s), 2.0, 0.5));
  });
  EXPECT_GT(ks_p(x, cdf), kAlpha);
}

TEST(ScaledBeta, UnitMedian) {
  auto x = draws(52, 20001, [](gs::RngHandle& r) { return gs::sample_sb(1.0, 1.0, r); });
  std::nth_element(x.begin(), x.begin() + 10000, x.end());
  EXPECT_NEAR(x[10000], 1.0, 0.05);
}

TEST(InverseRescaledBeta, KsAgainstQuadratureCdf) {
  // The oracle CDF integrates the IRB density written out independently of
  // the library: (1/B(b,a)) [u(1+u)]^{-1} L^{b-1} (1+L)^{-(a+b)}, L = ln(1+1/u).
  const double a = 2.0, b = 0.5;
  const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  oracle::LogScaleCdf cdf([&](double s) {
    const double L = s > 30 ? std::exp(-s) : std::log1p(std::exp(-s));
    return -lb - s - std::log1p(std::exp(s)) + (b - 1.0) * std::log(L) - (a + b) * std::log1p(L);
  });
  auto x = draws(61, kN, [&](gs::RngHandle& r) { return gs::sample_irb(b, a, r); });
  EXPECT_GT(ks_p(x, cdf), kAlpha);
  for (double u : x) ASSERT_TRUE(u > 0.0 && std::isfinite(u));
}

TEST(InverseRescaledBeta, MapIsDecreasingAndFinite) {
  // Tiny b pushes w towards 0 (huge u); large b towards large w (u near 0).
  auto small_w = draws(62, 2000, [](gs::RngHandle& r) { return gs::sample_irb(0.02, 2.0, r); });
  auto large_w = draws(63, 2000, [](gs::RngHandle& r) { return gs::sample_irb(50.0, 0.5, r); });
  EXPECT_GT(sample_mean(small_w), 1e3);
  EXPECT_LT(sample_mean(large_w), 1e-3);
  for (double u : small_w) ASSERT_TRUE(u > 0.0 && std::isfinite(u));
  for (double u : large_w) ASSERT_TRUE(u > 0.0 && std::isfinite(u));
}

TEST(StudentT, SymmetricHeavyTail) {
  auto x = draws(71, kN, [](gs::RngHandle& r) { return gs::sample_student_t(3.0, r); });
  // t_3 CDF in closed form
  auto cdf = [](double t) {
    const double th = std::atan(t / std::sqrt(3.0));
    return 0.5 + (th + std::sin(th) * std::cos(th)) / M_PI;
  };
  EXPECT_GT(ks_p(x, cdf), kAlpha);
}
