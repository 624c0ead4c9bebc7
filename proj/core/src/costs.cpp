#include "sybil/costs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

namespace {

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string("cost scheme field ") + name +
                      " must be finite and nonnegative, got " + format_number(value));
  }
}

}  // namespace

CostScheme::CostScheme(double min_balance, double vote_cost, double setup_cost,
                       double split_cost)
    : min_balance_(min_balance),
      vote_cost_(vote_cost),
      setup_cost_(setup_cost),
      split_cost_(split_cost) {
  require_nonnegative(min_balance, "min_balance");
  require_nonnegative(vote_cost, "vote_cost");
  require_nonnegative(setup_cost, "setup_cost");
  require_nonnegative(split_cost, "split_cost");
  if (min_balance == 0.0 && vote_cost == 0.0 && split_cost == 0.0) {
    throw DomainError(
        "cost scheme needs a positive min_balance, vote_cost or split_cost; "
        "otherwise splitting is free and unbounded");
  }
}

namespace {

// Rounding slack of (a - p)/n - v - s: a few ulps of its largest term.
double rounding_slack(double share, double min_balance, double per_wallet) noexcept {
  return 4.0 * std::numeric_limits<double>::epsilon() *
         (std::fabs(share) + min_balance + per_wallet);
}

}  // namespace

double CostScheme::per_wallet_balance(double budget, std::uint64_t wallets) const noexcept {
  const double share = usable_budget(budget) / static_cast<double>(wallets);
  const double balance = share - vote_cost_ - split_cost_;
  if (balance < min_balance_ &&
      balance >= min_balance_ - rounding_slack(share, min_balance_, per_wallet_cost())) {
    return min_balance_;
  }
  return balance;
}

bool CostScheme::is_feasible(double budget, std::uint64_t wallets) const noexcept {
  return wallets >= 1 && per_wallet_balance(budget, wallets) >= min_balance_;
}

std::uint64_t CostScheme::max_feasible_wallets(double budget) const {
  if (!std::isfinite(budget) || budget < 0.0) {
    throw DomainError("budget must be finite and nonnegative, got " + format_number(budget));
  }
  const double usable = usable_budget(budget);
  const double per_wallet = min_balance_ + vote_cost_ + split_cost_;
  if (usable < per_wallet) return 0;

  const double estimate = std::floor(usable / per_wallet);
  // 2^63 keeps n + 1 and the double round-trip well inside uint64.
  if (estimate >= 9.2e18) {
    throw DomainError("wallet count for budget " + format_number(budget) +
                      " exceeds the 64-bit range");
  }
  // The quotient can land one ulp either side of an integer; settle the
  // boundary with the same predicate callers use.
  auto n = static_cast<std::uint64_t>(estimate);
  while (n > 0 && !is_feasible(budget, n)) --n;
  while (is_feasible(budget, n + 1)) ++n;
  return n;
}

}  // namespace sybil
