#pragma once

#include <cstdint>

#include "sybil/costs.hpp"
#include "sybil/rules.hpp"

namespace sybil {

/// An attacker's even split of `budget` tokens into `wallets` wallets.
struct AttackPlan {
  std::uint64_t wallets = 0;
  /// Net balance per wallet at snapshot time: (a - p)/n - v - s.
  double per_wallet = 0.0;
  /// n * f(per_wallet).
  double total_power = 0.0;
  double budget = 0.0;
  /// The unconstrained per-wallet optimum lies below m, so the minimum
  /// balance shapes the split.
  bool binding_min = false;
};

/// Certified linear lower bound V*(a) >= alpha * a for all a >= a0.
struct PlutocracyBound {
  double alpha = 0.0;
  double a0 = 0.0;
  /// Net per-wallet balance used for the chunked split.
  double chunk = 0.0;
};

/// n * f((a - p)/n - v - s). Throws FeasibilityError unless
/// 1 <= n <= max_feasible_wallets(a).
double power_at(const VotingRule& rule, const CostScheme& costs, double budget,
                std::uint64_t wallets);

/// Integer-optimal split maximizing power_at over every feasible n, ties
/// going to the smaller n. Throws FeasibilityError when no n is feasible
/// (including a <= p).
///
/// h(n) = A g(A/n - c) is unimodal in n, so the optimum sits at floor or
/// ceil of the relaxed count A/(w* + c), or at the feasibility edge when m
/// binds. Those candidates are cross-checked against their neighbours; a
/// disagreement triggers a full scan (n <= 1e6) or a hill climb.
AttackPlan optimal_split(const VotingRule& rule, const CostScheme& costs, double budget);

/// Exhaustive maximization of sum f(w_i) over arbitrary (not necessarily
/// even) allocations whose balances lie on the grid m + k (a - m)/grid,
/// k = 0..grid, subject to sum w_i + n (v + s) + p <= a. Every wallet count
/// n up to max_feasible_wallets is tried. Shares no code with optimal_split;
/// intended as a test oracle. Throws SizeError unless
/// max_feasible_wallets <= 12 and 1 <= grid <= 50, FeasibilityError when
/// no wallet is feasible.
double brute_force_oracle(const VotingRule& rule, const CostScheme& costs, double budget,
                          int grid);

/// floor(a / m_eff) * f(m_eff): the power of splitting a cost-free budget
/// into chunks of m_eff. Throws TrivialityError when f(m_eff) = 0 and
/// DomainError when m_eff <= 0 or a < m_eff.
double sybil_lower_bound(const VotingRule& rule, double m_eff, double budget);

/// The chunked lower bound under costs: wallets of net size `chunk` cost
/// chunk + v + s each, giving floor((a - p)/(chunk + v + s)) * f(chunk).
/// `chunk` is m when m > 0, else the relaxed-optimal wallet size.
double costed_lower_bound(const VotingRule& rule, const CostScheme& costs, double budget);

/// alpha = f(m) / (2 m') with m' = m + v + s and a0 = 2 m' + 2 p. When m = 0
/// the relaxed-optimal wallet size stands in for m (c itself for Linear).
PlutocracyBound plutocracy_bound(const VotingRule& rule, const CostScheme& costs);

/// Least budget whose integer-optimal power reaches `target`, by bisection
/// on the nondecreasing map a -> V*(a) down to a 1e-9 relative bracket.
/// Throws DomainError unless target is positive and finite.
double min_budget_for_power(const VotingRule& rule, const CostScheme& costs, double target);

}  // namespace sybil
