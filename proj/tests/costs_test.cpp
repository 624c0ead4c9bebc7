#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "sybil/costs.hpp"
#include "sybil/error.hpp"

namespace sybil {
namespace {

TEST(CostScheme, ValidatesInvariants) {
  EXPECT_THROW(CostScheme(0, 0, 0, 0), DomainError);
  EXPECT_THROW(CostScheme(0, 0, 5, 0), DomainError);
  EXPECT_THROW(CostScheme(-1, 1, 0, 0), DomainError);
  EXPECT_THROW(CostScheme(0, 1, -0.5, 0), DomainError);
  EXPECT_THROW(CostScheme(0, std::numeric_limits<double>::infinity(), 0, 0), DomainError);
  EXPECT_THROW(CostScheme(0, std::nan(""), 0, 0), DomainError);
  EXPECT_NO_THROW(CostScheme(2, 0, 0, 0));
  EXPECT_NO_THROW(CostScheme(0, 0, 0, 0.1));
}

TEST(CostScheme, PerWalletCostExcludesSetup) {
  EXPECT_DOUBLE_EQ(CostScheme(0, 1, 0, 0).per_wallet_cost(), 1.0);
  EXPECT_DOUBLE_EQ(CostScheme(0, 0.3, 5, 0.7).per_wallet_cost(), 1.0);
  EXPECT_DOUBLE_EQ(CostScheme(2, 0, 0, 0).per_wallet_cost(), 0.0);
}

TEST(CostScheme, MaxFeasibleWallets) {
  EXPECT_EQ(CostScheme(10, 1, 0, 0).max_feasible_wallets(100), 9u);
  EXPECT_EQ(CostScheme(0, 1, 0, 0).max_feasible_wallets(100), 100u);
  EXPECT_EQ(CostScheme(1, 1, 100, 0).max_feasible_wallets(50), 0u);
  EXPECT_EQ(CostScheme(0, 1, 0, 0).max_feasible_wallets(0.5), 0u);
  EXPECT_EQ(CostScheme(1, 1, 0, 0).max_feasible_wallets(2), 1u);
  EXPECT_THROW(CostScheme(0, 1, 0, 0).max_feasible_wallets(-1), DomainError);
  EXPECT_THROW(CostScheme(0, 1, 0, 0).max_feasible_wallets(1e300), DomainError);
}

TEST(CostScheme, SetupCostChargedForSingleWallet) {
  const CostScheme costs(0, 1, 3, 0);
  EXPECT_DOUBLE_EQ(costs.per_wallet_balance(10, 1), 6.0);
  EXPECT_TRUE(costs.is_feasible(4, 1));
  EXPECT_FALSE(costs.is_feasible(3.5, 1));
}

TEST(CostSchemeProperty, MaxFeasibleMatchesScan) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const CostScheme costs(3 * unit(rng), 2 * unit(rng) + 0.05, 5 * unit(rng), unit(rng));
    const double budget = 400 * unit(rng);
    std::uint64_t scanned = 0;
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
      if (costs.is_feasible(budget, n)) scanned = n;
    }
    ASSERT_EQ(costs.max_feasible_wallets(budget), scanned) << "trial " << trial;
  }
}

}  // namespace
}  // namespace sybil
