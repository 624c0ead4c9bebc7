#include "sybil/report.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sybil/closedform.hpp"
#include "sybil/error.hpp"
#include "sybil/numeric.hpp"
#include "sybil/optimizer.hpp"

namespace sybil {

namespace {

ProposalResult analyze_one(const ProposalSnapshot& snap, const VotingRule& rule,
                           const AnalysisOptions& options) {
  const GasProfile profile = options.gas_override.value_or(default_gas_profile(snap.chain));
  const CostScheme costs =
      gas_to_cost_scheme(snap, profile, options.min_balance, options.setup_cost);

  ProposalResult r;
  r.proposal_id = snap.proposal_id;
  r.honest_power = honest_power(rule, snap);
  r.honest_usd = total_weight(snap) * snap.token_usd;
  r.attacker_budget_tokens = rule.kind() == RuleKind::Linear
                                 ? r.honest_power
                                 : min_budget_for_power(rule, costs, r.honest_power);
  r.attacker_usd = r.attacker_budget_tokens * snap.token_usd;
  r.amplification = r.honest_usd / r.attacker_usd;
  return r;
}

}  // namespace

AnalysisReport analyze_protocol(std::span<const ProposalSnapshot> snapshots,
                                const VotingRule& rule, const AnalysisOptions& options) {
  if (snapshots.empty()) throw DomainError("analyze_protocol needs at least one proposal");
  AnalysisReport report;
  report.protocol = snapshots.front().protocol;
  report.rule = rule;
  for (const auto& snap : snapshots) {
    if (snap.protocol != report.protocol) {
      throw DomainError("analyze_protocol: proposal " + snap.proposal_id + " belongs to \"" +
                        snap.protocol + "\", not \"" + report.protocol + "\"");
    }
  }

  for (const auto& snap : snapshots) {
    try {
      report.per_proposal.push_back(analyze_one(snap, rule, options));
    } catch (const Error& e) {
      report.failures.push_back({snap.proposal_id, e.what()});
    }
  }

  const auto count = static_cast<double>(report.per_proposal.size());
  if (report.per_proposal.empty()) {
    report.mean_attacker_usd = report.mean_baseline_usd = std::nan("");
    report.mean_amplification = report.amplification_of_means = std::nan("");
    return report;
  }
  double attacker = 0.0;
  double baseline = 0.0;
  double amplification = 0.0;
  for (const auto& r : report.per_proposal) {
    attacker += r.attacker_usd;
    baseline += r.honest_usd;
    amplification += r.amplification;
  }
  report.mean_attacker_usd = attacker / count;
  report.mean_baseline_usd = baseline / count;
  report.mean_amplification = amplification / count;
  report.amplification_of_means = report.mean_baseline_usd / report.mean_attacker_usd;
  return report;
}

std::vector<CurvePoint> per_dollar_curve(const VotingRule& rule, const CostScheme& costs,
                                         double token_usd, std::span<const double> budgets) {
  if (!(token_usd > 0.0) || !std::isfinite(token_usd)) {
    throw DomainError("token price must be positive, got " + format_number(token_usd));
  }
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (!(budgets[i] > 0.0) || !std::isfinite(budgets[i])) {
      throw DomainError("curve budgets must be positive, got " + format_number(budgets[i]));
    }
    if (i > 0 && budgets[i] < budgets[i - 1]) {
      throw DomainError("curve budgets must be sorted ascending");
    }
  }
  const double kappa = relaxed_optimum(rule, costs).kappa;

  std::vector<CurvePoint> out;
  out.reserve(budgets.size());
  for (double a : budgets) {
    CurvePoint pt;
    pt.budget_tokens = a;
    pt.budget_usd = a * token_usd;
    pt.honest_per_dollar = rule.eval(a) / a / token_usd;
    pt.kappa_line = kappa / token_usd;
    if (costs.max_feasible_wallets(a) > 0) {
      const AttackPlan plan = optimal_split(rule, costs, a);
      pt.attacker_per_dollar = plan.total_power / a / token_usd;
      pt.wallets = plan.wallets;
      pt.feasible = true;
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<double> log_budget_grid(double from, double to, std::size_t points) {
  if (!(from > 0.0) || !(to > from) || !std::isfinite(to)) {
    throw DomainError("budget range needs 0 < from < to (got " + format_number(from) + ", " +
                      format_number(to) + ")");
  }
  if (points < 2) throw DomainError("a budget grid needs at least two points");
  std::vector<double> grid(points);
  const double lo = std::log(from);
  const double span = std::log(to) - lo;
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::exp(lo + span * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  grid.front() = from;
  grid.back() = to;
  return grid;
}

std::vector<double> adaptive_budget_grid(const VotingRule& rule, const CostScheme& costs,
                                         double from, double to, std::size_t base_per_decade,
                                         std::size_t dense_per_decade) {
  if (base_per_decade == 0 || dense_per_decade < base_per_decade) {
    throw DomainError("grid densities need 0 < base <= dense");
  }
  const double decades = std::log10(to / from);
  const auto base_points =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(decades * base_per_decade)) + 1);
  const std::vector<double> base = log_budget_grid(from, to, base_points);

  auto wallets_at = [&](double a) -> std::uint64_t {
    return costs.max_feasible_wallets(a) > 0 ? optimal_split(rule, costs, a).wallets : 0;
  };

  const double dense_ratio = std::pow(10.0, 1.0 / static_cast<double>(dense_per_decade));
  std::vector<double> out{base.front()};
  std::uint64_t prev_wallets = wallets_at(base.front());
  for (std::size_t i = 1; i < base.size(); ++i) {
    const std::uint64_t wallets = wallets_at(base[i]);
    if (wallets != prev_wallets) {
      for (double a = base[i - 1] * dense_ratio; a < base[i] / std::sqrt(dense_ratio);
           a *= dense_ratio) {
        out.push_back(a);
      }
    }
    out.push_back(base[i]);
    prev_wallets = wallets;
  }
  return out;
}

double binding_approximation(const VotingRule& rule, const CostScheme& costs, double budget) {
  const double m = costs.min_balance();
  const double w_free = unconstrained_maximizer(rule, costs.per_wallet_cost());
  if (!(w_free < m)) {
    throw DomainError("minimum balance does not bind (unconstrained optimum " +
                      format_number(w_free) + " >= m = " + format_number(m) +
                      "); use closed_form_power");
  }
  const double usable = costs.usable_budget(budget);
  if (!(usable >= 0.0)) {
    throw DomainError("budget " + format_number(budget) + " does not cover the setup cost");
  }
  return usable / (m + costs.per_wallet_cost()) * rule.eval(m);
}

}  // namespace sybil
