#include "sybil/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sybil/closedform.hpp"
#include "sybil/error.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

namespace {

constexpr std::uint64_t kFullScanLimit = 1'000'000;
constexpr int kNeighbourhood = 2;

std::uint64_t clamp_count(double n, std::uint64_t max_wallets) {
  if (std::isnan(n) || n <= 1.0) return 1;
  if (n >= static_cast<double>(max_wallets)) return max_wallets;
  return static_cast<std::uint64_t>(n);
}

// Best (power, n) seen so far with smaller-n tie-breaking.
struct Best {
  std::uint64_t wallets = 0;
  double power = -std::numeric_limits<double>::infinity();

  void offer(std::uint64_t n, double p) {
    if (wallets == 0 || strictly_greater(p, power) ||
        (n < wallets && !strictly_greater(power, p))) {
      wallets = n;
      power = p;
    }
  }
};

double unchecked_power(const VotingRule& rule, const CostScheme& costs, double budget,
                       std::uint64_t n) {
  return static_cast<double>(n) * rule.eval(costs.per_wallet_balance(budget, n));
}

}  // namespace

double power_at(const VotingRule& rule, const CostScheme& costs, double budget,
                std::uint64_t wallets) {
  const std::uint64_t max_wallets = costs.max_feasible_wallets(budget);
  if (wallets < 1 || wallets > max_wallets) {
    const std::string bound = wallets < 1 ? "at least one wallet is required"
                                          : "per-wallet balance " +
                                                format_number(costs.per_wallet_balance(budget, wallets)) +
                                                " falls below the minimum " +
                                                format_number(costs.min_balance());
    throw FeasibilityError("split into " + std::to_string(wallets) + " wallets is infeasible for budget " +
                           format_number(budget) + ": " + bound + " (max feasible " +
                           std::to_string(max_wallets) + ")");
  }
  return unchecked_power(rule, costs, budget, wallets);
}

AttackPlan optimal_split(const VotingRule& rule, const CostScheme& costs, double budget) {
  const std::uint64_t max_wallets = costs.max_feasible_wallets(budget);
  if (max_wallets == 0) {
    throw FeasibilityError("budget " + format_number(budget) +
                           " cannot fund a single voting wallet (needs p + m + v + s = " +
                           format_number(costs.setup_cost() + costs.min_balance() +
                                         costs.per_wallet_cost()) +
                           ")");
  }
  const double usable = costs.usable_budget(budget);
  const double c = costs.per_wallet_cost();
  const double w_free = unconstrained_maximizer(rule, c);
  const double denom = w_free + c;
  const double relaxed_n = denom > 0.0 ? usable / denom : std::numeric_limits<double>::infinity();

  std::array<std::uint64_t, 4> candidates{1, max_wallets, clamp_count(std::floor(relaxed_n), max_wallets),
                                          clamp_count(std::ceil(relaxed_n), max_wallets)};
  std::sort(candidates.begin(), candidates.end());

  auto h = [&](std::uint64_t n) { return unchecked_power(rule, costs, budget, n); };

  Best best;
  for (std::uint64_t n : candidates) best.offer(n, h(n));

  // Neighbourhood check guards edge effects at the feasibility boundary.
  bool disagrees = false;
  for (int d = -kNeighbourhood; d <= kNeighbourhood && !disagrees; ++d) {
    if (d == 0) continue;
    const auto n = static_cast<std::int64_t>(best.wallets) + d;
    if (n < 1 || static_cast<std::uint64_t>(n) > max_wallets) continue;
    disagrees = strictly_greater(h(static_cast<std::uint64_t>(n)), best.power);
  }
  if (disagrees) {
    if (max_wallets <= kFullScanLimit) {
      for (std::uint64_t n = 1; n <= max_wallets; ++n) best.offer(n, h(n));
    } else {
      for (;;) {
        const std::uint64_t n = best.wallets;
        const double up = n < max_wallets ? h(n + 1) : -1.0;
        const double down = n > 1 ? h(n - 1) : -1.0;
        if (strictly_greater(down, best.power) && down >= up) {
          best = {n - 1, down};
        } else if (strictly_greater(up, best.power)) {
          best = {n + 1, up};
        } else {
          break;
        }
      }
    }
  }

  AttackPlan plan;
  plan.wallets = best.wallets;
  plan.per_wallet = costs.per_wallet_balance(budget, best.wallets);
  plan.total_power = best.power;
  plan.budget = budget;
  plan.binding_min = w_free < costs.min_balance();
  return plan;
}

double sybil_lower_bound(const VotingRule& rule, double m_eff, double budget) {
  if (!(m_eff > 0.0) || !std::isfinite(m_eff)) {
    throw DomainError("chunk size must be positive and finite, got " + format_number(m_eff));
  }
  if (!(budget >= m_eff)) {
    throw DomainError("budget " + format_number(budget) + " is below the chunk size " +
                      format_number(m_eff));
  }
  const double chunk_power = rule.eval(m_eff);
  if (chunk_power <= 0.0) {
    throw TrivialityError("f(" + format_number(m_eff) + ") = 0; the lower bound is vacuous");
  }
  return std::floor(budget / m_eff) * chunk_power;
}

namespace {

double chunk_size(const VotingRule& rule, const CostScheme& costs) {
  if (costs.min_balance() > 0.0) return costs.min_balance();
  const double w_free = unconstrained_maximizer(rule, costs.per_wallet_cost());
  if (std::isinf(w_free)) return costs.per_wallet_cost();
  return w_free;
}

}  // namespace

double costed_lower_bound(const VotingRule& rule, const CostScheme& costs, double budget) {
  const double chunk = chunk_size(rule, costs);
  const double gross = chunk + costs.per_wallet_cost();
  const double usable = costs.usable_budget(budget);
  if (!(usable >= gross)) {
    throw DomainError("budget " + format_number(budget) + " cannot fund one chunk of gross size " +
                      format_number(gross));
  }
  const double chunk_power = rule.eval(chunk);
  if (chunk_power <= 0.0) {
    throw TrivialityError("f(" + format_number(chunk) + ") = 0; the lower bound is vacuous");
  }
  return std::floor(usable / gross) * chunk_power;
}

PlutocracyBound plutocracy_bound(const VotingRule& rule, const CostScheme& costs) {
  const double chunk = chunk_size(rule, costs);
  const double shifted = chunk + costs.per_wallet_cost();
  const double chunk_power = rule.eval(chunk);
  if (!(chunk_power > 0.0) || !(shifted > 0.0)) {
    throw TrivialityError("f(" + format_number(chunk) + ") = 0; no positive vote yield");
  }
  PlutocracyBound bound;
  bound.alpha = chunk_power / (2.0 * shifted);
  bound.a0 = 2.0 * shifted + 2.0 * costs.setup_cost();
  bound.chunk = chunk;
  return bound;
}

double min_budget_for_power(const VotingRule& rule, const CostScheme& costs, double target) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw DomainError("target power must be positive and finite, got " + format_number(target));
  }
  auto reaches = [&](double a) {
    return costs.max_feasible_wallets(a) > 0 && optimal_split(rule, costs, a).total_power >= target;
  };

  // Smallest budget funding one wallet, and the kappa bound V* <= kappa (a - p).
  const double entry = costs.setup_cost() + costs.min_balance() + costs.per_wallet_cost();
  const double kappa = relaxed_optimum(rule, costs).kappa;
  double lo = std::max(entry, costs.setup_cost() + target / kappa);
  if (reaches(lo)) {
    // Only the entry point can satisfy the target below the kappa bound.
    return lo;
  }
  double hi = std::max(2.0 * lo, lo + 1.0);
  while (!reaches(hi)) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw DomainError("target power is out of reach");
  }
  while (hi - lo > kRelTol * hi) {
    const double mid = lo + 0.5 * (hi - lo);
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace sybil
