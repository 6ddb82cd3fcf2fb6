#include <gammashrink/model.hpp>
#include <gammashrink/special_math.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gs = gammashrink;

TEST(Observation, Validation) {
  EXPECT_TRUE((gs::Observation{7.0, 5.0, 1.0}.valid()));
  EXPECT_FALSE((gs::Observation{0.0, 5.0, 1.0}.valid()));
  EXPECT_FALSE((gs::Observation{1.0, -5.0, 1.0}.valid()));
  EXPECT_FALSE((gs::Observation{1.0, 5.0, std::nan("")}.valid()));
  gs::Observations data{{1, 1, 1}, {2, 2, 0}};
  try {
    gs::validate(data);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
}

TEST(PriorSpec, FamiliesAndGlobals) {
  EXPECT_EQ(gs::parse_family("irb"), gs::PriorFamily::IRB);
  EXPECT_EQ(gs::to_string(gs::PriorFamily::GL), "gl");
  EXPECT_THROW(gs::parse_family("horseshoe"), std::invalid_argument);
  EXPECT_EQ(gs::GlobalParam::fixed(2.5).describe(), "fixed:2.5");
  EXPECT_EQ(gs::GlobalParam::gamma_prior(0.1, 0.1).describe(), "gamma:0.1,0.1");
  gs::PriorSpec p;
  p.a = -1;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p.a = 2;
  p.tau = gs::GlobalParam::fixed(0.0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(PriorSpec, TailIndices) {
  gs::PriorSpec p;
  EXPECT_EQ(gs::tail_indices(p).alpha, 2.0);
  EXPECT_EQ(gs::tail_indices(p).gamma_idx, -1.0);
  p.family = gs::PriorFamily::IRB;
  EXPECT_EQ(gs::tail_indices(p).alpha, 0.0);
  EXPECT_EQ(gs::tail_indices(p).gamma_idx, 2.0);
}

TEST(ScaledBetaDensity, ValueNormalizationAndTail) {
  EXPECT_NEAR(gs::sb_density(1.0, 2.0, 0.5), 1.0 / (4.0 / 3.0 * std::pow(2.0, 2.5)), 1e-15);
  EXPECT_NEAR(std::exp(gs::log_beta(2.0, 0.5)), 4.0 / 3.0, 1e-14);
  for (double u : {1e-3, 0.7, 40.0}) {
    EXPECT_NEAR(gs::sb_density(u, 2.0, 0.5), oracle::beta_prime_density(u, 2.0, 0.5),
                1e-13 * oracle::beta_prime_density(u, 2.0, 0.5));
  }
  const double total = oracle::integrate([](double u) { return gs::sb_density(u, 2.0, 0.5); }, 0.0,
                                         INFINITY, 1e-13);
  EXPECT_NEAR(total, 1.0, 1e-8);
  EXPECT_NEAR(gs::sb_density(1e-9, 2.0, 0.5) / 1e-9, 0.75, 1e-8);
  EXPECT_THROW(gs::sb_density(0.0, 2.0, 0.5), std::domain_error);
}

TEST(InverseRescaledBetaDensity, NormalizationAndTail) {
  const double total = oracle::integrate(
      [](double s) { return std::exp(gs::irb_log_density_logu(s, 0.5, 2.0) + s); }, -2000.0, 2000.0,
      1e-13);
  EXPECT_NEAR(total, 1.0, 1e-6);
  // u^{1+b} π(u) settles to a constant
  auto scaled = [](double u) { return gs::irb_density(u, 0.5, 2.0) * std::pow(u, 1.5); };
  EXPECT_NEAR(scaled(1e10) / scaled(1e12), 1.0, 1e-3);
  // log-u form stays finite far outside the double range of u
  EXPECT_TRUE(std::isfinite(gs::irb_log_density_logu(-5000.0, 0.5, 2.0)));
  EXPECT_TRUE(std::isfinite(gs::irb_log_density_logu(5000.0, 0.5, 2.0)));
  EXPECT_TRUE(std::isfinite(gs::sb_log_density_logu(-5000.0, 2.0, 0.5)));
}

TEST(InverseRescaledBetaDensity, AugmentedRepresentation) {
  for (double u : {0.1, 1.0, 10.0}) {
    const double rep = oracle::irb_augmented_integral(u, 0.5, 2.0) / std::exp(gs::log_beta(0.5, 2.0));
    EXPECT_NEAR(rep / gs::irb_density(u, 0.5, 2.0), 1.0, 1e-5) << u;
  }
}

TEST(LocalPrior, DispatchRejectsGl) {
  gs::PriorSpec p;
  p.family = gs::PriorFamily::GL;
  EXPECT_THROW(gs::local_prior_log_density_logu(0.0, p), std::invalid_argument);
}

TEST(ShrinkageFactor, Values) {
  EXPECT_DOUBLE_EQ(gs::shrinkage_factor(1, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(gs::shrinkage_factor(1, 1, 5), 1.0 / 6.0);
  EXPECT_NEAR(gs::shrinkage_factor(1, 1e300, 5), 1.0, 1e-15);
}

TEST(ConditionalLambda, ConjugateUpdate) {
  const auto ig = gs::conditional_lambda_posterior({7.0, 5.0, 1.0}, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(ig.shape, 7.0);
  EXPECT_DOUBLE_EQ(ig.scale, 36.0);
  EXPECT_DOUBLE_EQ(ig.mean(), 6.0);
  for (double nu : {0.3, 2.0, 40.0}) {
    const double y = 7.0, delta = 5.0, beta = 2.0;
    const double kappa = nu / (delta + nu);
    const double m = gs::conditional_lambda_posterior({y, delta, 1.0}, nu, beta).mean();
    EXPECT_NEAR(m, beta + (1 - kappa) * (y - beta), 1e-12);
  }
  EXPECT_NEAR(gs::conditional_lambda_posterior({7.0, 5.0, 1.0}, 1e12, 2.0).mean(), 2.0, 1e-9);
  // η divides y
  EXPECT_DOUBLE_EQ(gs::conditional_lambda_posterior({14.0, 5.0, 2.0}, 1.0, 1.0).scale, 36.0);
}

TEST(KlDivergence, Values) {
  EXPECT_EQ(gs::kl_divergence(2.0, 2.0, 5.0), 0.0);
  EXPECT_NEAR(gs::kl_divergence(1.0, std::exp(1.0), 1.0), std::exp(-1.0), 1e-15);
  EXPECT_NEAR(gs::kl_divergence(1.3, 0.4, 4.0), 2 * gs::kl_divergence(1.3, 0.4, 2.0), 1e-14);
}

TEST(KlNeighborhood, EndpointsAndWidth) {
  for (double lambda0 : {1.0, 3.0}) {
    for (double eps : {1e-1, 1e-3, 1e-6}) {
      const double delta = 5.0;
      const auto nb = gs::kl_neighborhood(lambda0, eps, delta);
      EXPECT_LT(nb.lo, lambda0);
      EXPECT_GT(nb.hi, lambda0);
      EXPECT_NEAR(gs::kl_divergence(lambda0, nb.lo, delta), eps, 1e-10 * std::max(1.0, eps));
      EXPECT_NEAR(gs::kl_divergence(lambda0, nb.hi, delta), eps, 1e-10 * std::max(1.0, eps));
      for (double f : {0.01, 0.5, 0.99}) {
        EXPECT_LT(gs::kl_divergence(lambda0, nb.lo + f * (nb.hi - nb.lo), delta), eps);
      }
      // width in 1/λ
      EXPECT_GT(1.0 / nb.lo - 1.0 / nb.hi, eps / lambda0 / delta);
    }
  }
  const auto tiny = gs::kl_neighborhood(2.0, 1e-14, 5.0);
  EXPECT_LT(tiny.hi - tiny.lo, 1e-5);
}
