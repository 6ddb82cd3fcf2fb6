#include <gammashrink/diagnostics.hpp>
#include <gammashrink/distributions.hpp>
#include <gammashrink/rng.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace gs = gammashrink;

TEST(Moments, MeanVariance) {
  const std::vector<double> x{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(gs::mean(x), 2.5);
  EXPECT_DOUBLE_EQ(gs::variance(x), 5.0 / 3.0);
}

TEST(Quantile, Type7) {
  const std::vector<double> x{4, 1, 3, 2, 5};
  EXPECT_DOUBLE_EQ(gs::quantile(x, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(gs::quantile(x, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(gs::quantile(x, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(gs::quantile(x, 0.1), 1.4);
  const std::vector<double> c(50, 2.5);
  EXPECT_EQ(gs::quantile(c, 0.025), 2.5);
  EXPECT_EQ(gs::quantile(c, 0.975), 2.5);
}

TEST(Ess, IndependentDrawsNearN) {
  gs::RngHandle rng(5, 0);
  std::vector<double> x(20000);
  for (auto& v : x) v = gs::sample_normal(rng);
  const double ess = gs::effective_sample_size(x);
  EXPECT_GT(ess, 0.85 * x.size());
  EXPECT_LT(ess, 1.15 * x.size());
}

TEST(Ess, Ar1MatchesTheory) {
  // AR(1) with coefficient r has ESS ≈ N (1 - r) / (1 + r)
  gs::RngHandle rng(6, 0);
  const double r = 0.9;
  std::vector<double> x(200000);
  double v = 0;
  for (auto& xi : x) {
    v = r * v + std::sqrt(1 - r * r) * gs::sample_normal(rng);
    xi = v;
  }
  const double expect = x.size() * (1 - r) / (1 + r);
  EXPECT_NEAR(gs::effective_sample_size(x) / expect, 1.0, 0.15);
  EXPECT_NEAR(gs::mcse_mean(x), std::sqrt(gs::variance(x) / gs::effective_sample_size(x)), 1e-12);
}

TEST(Ess, ConstantChain) {
  const std::vector<double> c(100, 1.0);
  EXPECT_EQ(gs::mcse_mean(c), 0.0);
}
