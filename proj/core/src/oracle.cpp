#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"
#include "sybil/optimizer.hpp"

namespace sybil {

namespace {

constexpr std::uint64_t kMaxOracleWallets = 12;
constexpr int kMaxOracleGrid = 50;

}  // namespace

// Dynamic program over grid steps: best[j][k] is the largest sum of f over j
// wallets whose step indices add up to at most k. This visits the same search
// space as enumerating every multiset of grid balances.
double brute_force_oracle(const VotingRule& rule, const CostScheme& costs, double budget,
                          int grid) {
  if (grid < 1 || grid > kMaxOracleGrid) {
    throw SizeError("oracle grid must lie in [1, 50], got " + std::to_string(grid));
  }
  const std::uint64_t max_wallets = costs.max_feasible_wallets(budget);
  if (max_wallets > kMaxOracleWallets) {
    throw SizeError("oracle instance too large: " + std::to_string(max_wallets) +
                    " feasible wallets (limit 12)");
  }
  if (max_wallets == 0) {
    throw FeasibilityError("budget " + format_number(budget) + " cannot fund a voting wallet");
  }

  const double m = costs.min_balance();
  const double step = (budget - m) / grid;
  std::vector<double> value(static_cast<std::size_t>(grid) + 1);
  for (int k = 0; k <= grid; ++k) value[k] = rule.eval(m + k * step);

  const auto n_max = static_cast<int>(max_wallets);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  double overall = neg_inf;

  for (int n = 1; n <= n_max; ++n) {
    const double spare =
        budget - costs.setup_cost() - n * costs.per_wallet_cost() - n * m;
    if (spare < 0.0) continue;
    // Steps the n wallets may share above the minimum; the small slack keeps
    // allocations that land exactly on the budget.
    const int steps = step > 0.0 ? static_cast<int>(std::floor(spare / step + 1e-9)) : 0;

    // Each row is nondecreasing in k since "at most k" only widens.
    std::vector<double> row(static_cast<std::size_t>(steps) + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
      std::vector<double> next(row.size(), neg_inf);
      for (int k = 0; k <= steps; ++k) {
        for (int t = 0; t <= std::min(k, grid); ++t) {
          next[k] = std::max(next[k], row[k - t] + value[t]);
        }
      }
      row = std::move(next);
    }
    overall = std::max(overall, row.back());
  }
  return overall;
}

}  // namespace sybil
