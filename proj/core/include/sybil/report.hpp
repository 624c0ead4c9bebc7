#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sybil/costs.hpp"
#include "sybil/ingest.hpp"
#include "sybil/rules.hpp"

namespace sybil {

struct ProposalResult {
  std::string proposal_id;
  /// V_h = sum f(w_i) over every recorded voter.
  double honest_power = 0.0;
  /// Linear-voting control cost: sum of weights at the creation-day price.
  double honest_usd = 0.0;
  double attacker_budget_tokens = 0.0;
  double attacker_usd = 0.0;
  /// honest_usd / attacker_usd.
  double amplification = 0.0;
};

struct ProposalFailure {
  std::string proposal_id;
  std::string error;
};

/// Control cost of a Sybil attacker on every proposal of one protocol under
/// one voting rule.
struct AnalysisReport {
  std::string protocol;
  VotingRule rule = VotingRule::linear();
  std::vector<ProposalResult> per_proposal;
  /// Proposals whose analysis threw; they are excluded from the means.
  std::vector<ProposalFailure> failures;
  double mean_attacker_usd = 0.0;
  double mean_baseline_usd = 0.0;
  /// Arithmetic mean of the per-proposal amplification factors.
  double mean_amplification = 0.0;
  /// mean_baseline_usd / mean_attacker_usd, the per-protocol multiplier
  /// of a summary table built from mean costs.
  double amplification_of_means = 0.0;
};

struct AnalysisOptions {
  /// Replaces the per-chain default gas profile for every proposal.
  std::optional<GasProfile> gas_override;
  double min_balance = 0.0;
  double setup_cost = 0.0;
};

/// For each proposal: token costs from gas, honest power V_h, the least
/// attacker budget reaching V_h, and its USD price. The linear rule is
/// Sybil-immune, so its attacker budget is V_h itself (one wallet, a = V).
/// Throws DomainError when `snapshots` is empty or spans several protocols.
AnalysisReport analyze_protocol(std::span<const ProposalSnapshot> snapshots,
                                const VotingRule& rule, const AnalysisOptions& options = {});

struct CurvePoint {
  double budget_tokens = 0.0;
  double budget_usd = 0.0;
  /// f(a)/a per USD.
  double honest_per_dollar = 0.0;
  /// Integer-optimal V*(a)/a per USD; 0 when the budget is infeasible.
  double attacker_per_dollar = 0.0;
  /// kappa per USD.
  double kappa_line = 0.0;
  std::uint64_t wallets = 0;
  bool feasible = false;
};

/// Votes per USD for a single-wallet holder and the optimal Sybil attacker
/// at each budget (in tokens). Infeasible budgets stay in the output with
/// `feasible == false`. Throws DomainError unless budgets are positive and
/// ascending and token_usd > 0.
std::vector<CurvePoint> per_dollar_curve(const VotingRule& rule, const CostScheme& costs,
                                         double token_usd, std::span<const double> budgets);

/// `points` log-spaced budgets from `from` to `to` inclusive.
std::vector<double> log_budget_grid(double from, double to, std::size_t points);

/// Log grid at `base_per_decade`, refined to `dense_per_decade` inside every
/// interval where the optimal wallet count changes.
std::vector<double> adaptive_budget_grid(const VotingRule& rule, const CostScheme& costs,
                                         double from, double to, std::size_t base_per_decade = 50,
                                         std::size_t dense_per_decade = 400);

/// (a - p)/(m + v + s) * f(m), the linear approximation in the regime where
/// the minimum balance binds. Throws DomainError outside that regime.
double binding_approximation(const VotingRule& rule, const CostScheme& costs, double budget);

// --- emitters -------------------------------------------------------------

enum class Format { Csv, Json };

Format parse_format(std::string_view text);
/// `.json` -> Json, anything else -> Csv.
Format format_for_path(const std::filesystem::path& path);

inline constexpr std::string_view kReportCsvHeader =
    "protocol,rule,proposal_id,honest_power,honest_usd,attacker_budget_tokens,attacker_usd,"
    "amplification";
inline constexpr std::string_view kCurveCsvHeader =
    "budget_usd,honest_per_dollar,attacker_per_dollar,kappa";

void write_reports(std::ostream& out, std::span<const AnalysisReport> reports, Format format);
void write_curve(std::ostream& out, std::span<const CurvePoint> curve, Format format);

/// Writes to `path`; throws IoError naming the path on failure.
void emit_reports(std::span<const AnalysisReport> reports, Format format,
                  const std::filesystem::path& path);
void emit_curve(std::span<const CurvePoint> curve, Format format,
                const std::filesystem::path& path);

/// Inverse of the JSON writers. Curve points read back carry only the
/// emitted fields.
std::vector<AnalysisReport> read_reports_json(std::string_view text);
std::vector<CurvePoint> read_curve_json(std::string_view text);

}  // namespace sybil
