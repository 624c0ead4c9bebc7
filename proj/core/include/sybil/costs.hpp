#pragma once

#include <cstdint>

namespace sybil {

/// Token-denominated frictions C = (m, v, p, s) faced by a splitting attacker.
///
///   m  minimum balance a wallet must hold to vote
///   v  per-wallet voting cost
///   p  one-shot setup cost of the split flow
///   s  per-wallet splitting cost
///
/// All four are finite and nonnegative, and at least one of m, v, s is
/// strictly positive. The setup cost is charged whenever the attacker runs
/// the split flow, including n = 1.
class CostScheme {
 public:
  /// Throws DomainError when the invariants above are violated.
  CostScheme(double min_balance, double vote_cost, double setup_cost, double split_cost);

  double min_balance() const noexcept { return min_balance_; }
  double vote_cost() const noexcept { return vote_cost_; }
  double setup_cost() const noexcept { return setup_cost_; }
  double split_cost() const noexcept { return split_cost_; }

  /// c = v + s. The setup cost is not included.
  double per_wallet_cost() const noexcept { return vote_cost_ + split_cost_; }

  /// Tokens left for wallets after the setup cost: A = a - p.
  double usable_budget(double budget) const noexcept { return budget - setup_cost_; }

  /// Net balance of each wallet in an even n-way split: (a - p)/n - v - s.
  /// A result within rounding error below m is reported as m.
  double per_wallet_balance(double budget, std::uint64_t wallets) const noexcept;

  /// Whether an even n-way split leaves every wallet at or above m.
  bool is_feasible(double budget, std::uint64_t wallets) const noexcept;

  /// Largest n with (a - p)/n - v - s >= m, or 0 if even n = 1 is infeasible.
  /// Throws DomainError for negative or non-finite budgets and for counts
  /// that do not fit in 64 bits.
  std::uint64_t max_feasible_wallets(double budget) const;

  friend bool operator==(const CostScheme&, const CostScheme&) = default;

 private:
  double min_balance_;
  double vote_cost_;
  double setup_cost_;
  double split_cost_;
};

}  // namespace sybil
