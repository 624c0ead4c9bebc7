#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sybil/closedform.hpp"
#include "sybil/error.hpp"
#include "sybil/lambert_w.hpp"

namespace sybil {
namespace {

TEST(PerDollar, Examples) {
  EXPECT_DOUBLE_EQ(per_dollar(VotingRule::quadratic(), 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(per_dollar(VotingRule::quadratic(), 1, 4), 0.4);
  EXPECT_DOUBLE_EQ(per_dollar(VotingRule::linear(), 0, 7), 1.0);
  EXPECT_THROW(per_dollar(VotingRule::linear(), 0, 0), DomainError);
  EXPECT_THROW(per_dollar(VotingRule::linear(), -1, 3), DomainError);
}

TEST(RelaxedOptimum, Quadratic) {
  const auto r = relaxed_optimum(VotingRule::quadratic(), 1.0, 0.0);
  EXPECT_NEAR(r.w_star, 1.0, 1e-15);
  EXPECT_NEAR(r.kappa, 0.5, 1e-15);
  EXPECT_FALSE(r.constrained);
  EXPECT_NEAR(r.kappa, testing::grid_kappa(VotingRule::quadratic(), 1.0, 0.0, 100.0, 1e-4), 1e-8);
}

TEST(RelaxedOptimum, PowerQuarter) {
  const auto rule = VotingRule::power(0.25);
  const auto r = relaxed_optimum(rule, 1.0, 0.0);
  EXPECT_NEAR(r.w_star, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.kappa, 0.569877, 1e-6);
  EXPECT_NEAR(r.kappa, std::pow(0.25, 0.25) * std::pow(0.75, 0.75), 1e-15);
  EXPECT_NEAR(r.kappa, testing::grid_kappa(rule, 1.0, 0.0, 20.0, 1e-5), 1e-6);
}

TEST(RelaxedOptimum, Logarithmic) {
  const auto rule = VotingRule::logarithmic();
  const auto r = relaxed_optimum(rule, 1.0, 0.0);
  EXPECT_NEAR(r.w_star, std::numbers::e - 1.0, 1e-12);
  EXPECT_NEAR(r.kappa, 1.0 / std::numbers::e, 1e-12);
  EXPECT_NEAR(r.kappa, testing::grid_kappa(rule, 1.0, 0.0, 50.0, 1e-4), 1e-8);
  // Either side of the c = 1 limit.
  for (double c : {1.0 - 1e-9, 1.0 + 1e-9, 1.0 + 1e-6, 0.5, 2.0, 7.3}) {
    const auto near = relaxed_optimum(rule, c, 0.0);
    EXPECT_NEAR(near.kappa, testing::grid_kappa(rule, c, 0.0, 200.0, 1e-3), 1e-7) << "c=" << c;
    EXPECT_NEAR(near.kappa, testing::g(rule, c, near.w_star), 1e-12) << "c=" << c;
  }
}

TEST(RelaxedOptimum, Linear) {
  const auto r = relaxed_optimum(VotingRule::linear(), 1.0, 0.0);
  EXPECT_EQ(r.w_star, std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.kappa, 1.0);
  EXPECT_FALSE(r.constrained);
}

TEST(RelaxedOptimum, ConstrainedByMinimum) {
  const auto r = relaxed_optimum(VotingRule::quadratic(), 1.0, 2.0);
  EXPECT_TRUE(r.constrained);
  EXPECT_EQ(r.w_star, 2.0);
  EXPECT_NEAR(r.kappa, std::sqrt(2.0) / 3.0, 1e-15);
  EXPECT_EQ(r.kappa, r.v_star_per_A);
}

TEST(RelaxedOptimum, UnboundedKappaRejected) {
  EXPECT_THROW(relaxed_optimum(VotingRule::quadratic(), 0.0, 0.0), DomainError);
  EXPECT_THROW(relaxed_optimum(VotingRule::power(0.3), 0.0, 0.0), DomainError);
  EXPECT_NO_THROW(relaxed_optimum(VotingRule::quadratic(), 0.0, 1.0));
  EXPECT_THROW(relaxed_optimum(VotingRule::quadratic(), -1.0, 0.0), DomainError);
}

TEST(ClosedFormPower, TableValues) {
  EXPECT_NEAR(closed_form_power(VotingRule::quadratic(), CostScheme(0, 1, 0, 0), 100), 50.0, 1e-12);
  EXPECT_NEAR(closed_form_power(VotingRule::power(0.25), CostScheme(0, 1, 0, 0), 100), 56.9877,
              1e-4);
  EXPECT_NEAR(closed_form_power(VotingRule::logarithmic(), CostScheme(0, 2, 0, 0), 100),
              100.0 * testing::bisection_w0(1.0 / std::numbers::e), 1e-9);
  EXPECT_NEAR(closed_form_power(VotingRule::logarithmic(), CostScheme(0, 2, 0, 0), 100), 27.8465,
              1e-4);
  EXPECT_NEAR(closed_form_power(VotingRule::linear(), CostScheme(0, 1, 4, 0), 100), 96.0, 1e-12);
  EXPECT_NEAR(closed_form_power(VotingRule::quadratic(), CostScheme(0, 4, 10, 0), 110), 25.0,
              1e-12);
}

TEST(ClosedFormPower, Errors) {
  EXPECT_THROW(closed_form_power(VotingRule::quadratic(), CostScheme(10, 1, 0, 0), 100),
               DomainError);
  EXPECT_THROW(closed_form_power(VotingRule::quadratic(), CostScheme(0, 1, 10, 0), 5),
               DomainError);
}

TEST(ClosedFormProperty, KappaIsSupOfG) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = 0.05 + 5 * unit(rng);
    const double m = trial % 2 == 0 ? 0.0 : 6 * unit(rng);
    const VotingRule rules[] = {VotingRule::quadratic(), VotingRule::power(0.05 + 0.9 * unit(rng)),
                                VotingRule::logarithmic()};
    for (const auto& rule : rules) {
      const auto r = relaxed_optimum(rule, c, m);
      ASSERT_GE(r.w_star, m);
      EXPECT_NEAR(r.kappa, testing::g(rule, c, r.w_star), 1e-12);
      // No point of a coarse grid beats kappa, and one gets within its spacing.
      for (int k = 0; k <= 2000; ++k) {
        const double x = m + std::expm1(k * 0.005);
        ASSERT_LE(testing::g(rule, c, x), r.kappa * (1 + 1e-12)) << rule.to_string();
      }
    }
  }
}

TEST(ClosedFormProperty, FrictionLowersKappa) {
  for (const auto& rule : {VotingRule::quadratic(), VotingRule::power(0.25),
                           VotingRule::power(0.75), VotingRule::logarithmic()}) {
    for (double c : {0.1, 0.25, 1.0, 4.0, 10.0}) {
      const auto base = relaxed_optimum(rule, c, 0.0);
      EXPECT_LT(relaxed_optimum(rule, 2 * c, 0.0).kappa, base.kappa);
      EXPECT_LT(relaxed_optimum(rule, c, 2 * base.w_star + 0.1).kappa, base.kappa);
    }
  }
}

}  // namespace
}  // namespace sybil
