#pragma once

#include "sybil/costs.hpp"
#include "sybil/rules.hpp"

namespace sybil {

/// Real-valued (relaxed wallet count) optimum of the attacker's problem.
struct RelaxedOptimum {
  /// Maximizer of g(x) = f(x)/(x + c) on [m, inf). +inf for Linear, whose
  /// supremum is only approached.
  double w_star = 0.0;
  /// kappa = sup_{x >= m} g(x): the asymptotic votes-per-token slope.
  double kappa = 0.0;
  /// Relaxed V*/A. Equal to kappa in both regimes.
  double v_star_per_A = 0.0;
  /// The unconstrained maximizer fell below m and the sup sits at x = m.
  bool constrained = false;
};

/// g(x) = f(x)/(x + c), votes obtained per token spent on a wallet holding x.
/// Throws DomainError for negative x or c, or x + c = 0.
double per_dollar(const VotingRule& rule, double c, double x);

/// Maximizer of g ignoring the minimum balance: beta c/(1 - beta) for power
/// rules, (c - 1)/W0((c - 1)/e) - 1 for the log rule, +inf for Linear.
/// Returns 0 when the sup sits at the x -> 0 limit (c = 0).
double unconstrained_maximizer(const VotingRule& rule, double c);

/// Closed-form relaxed optimum for per-wallet cost c and minimum balance m.
/// Throws DomainError when kappa is unbounded (c = 0 and m = 0 under a power
/// rule) or when c or m is negative.
RelaxedOptimum relaxed_optimum(const VotingRule& rule, double c, double m);

inline RelaxedOptimum relaxed_optimum(const VotingRule& rule, const CostScheme& costs) {
  return relaxed_optimum(rule, costs.per_wallet_cost(), costs.min_balance());
}

/// Worst-case Sybil power (a - p) * kappa from the closed-form table:
///   quadratic  (a - p) / (2 sqrt(c))
///   power      (a - p) beta^beta (1 - beta)^(1 - beta) / c^(1 - beta)
///   log        (a - p) W0((c - 1)/e) / (c - 1)
///   linear     a - p
/// Valid only while the minimum balance is slack; throws DomainError when m
/// binds (use optimal_split there) or when a < p.
double closed_form_power(const VotingRule& rule, const CostScheme& costs, double budget);

}  // namespace sybil
