#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sybil/costs.hpp"
#include "sybil/rules.hpp"

namespace sybil {

enum class Chain { EthereumL1, Rollup };
enum class Support { For, Against, Abstain };

struct VoteRecord {
  std::string address;
  /// Whole governance-token units.
  double weight = 0.0;
  Support support = Support::For;

  friend bool operator==(const VoteRecord&, const VoteRecord&) = default;
};

/// One finalized proposal: who voted with how many tokens, plus the gas and
/// price context of its creation day.
struct ProposalSnapshot {
  std::string protocol;
  std::string proposal_id;
  Chain chain = Chain::EthereumL1;
  /// YYYY-MM-DD.
  std::string created_at;
  std::vector<VoteRecord> votes;
  /// Average base fee on the creation day, in wei per gas unit.
  std::uint64_t gas_price_wei = 0;
  double native_usd = 0.0;
  double token_usd = 0.0;

  friend bool operator==(const ProposalSnapshot&, const ProposalSnapshot&) = default;
};

struct GasProfile {
  std::uint64_t split_gas = 0;
  std::uint64_t vote_gas = 0;

  friend bool operator==(const GasProfile&, const GasProfile&) = default;
};

std::string_view to_string(Chain chain) noexcept;
std::string_view to_string(Support support) noexcept;

/// Loads one protocol file:
///
///   { "protocol": str,
///     "proposals": [ { "id": str, "chain": "ethereum" | "rollup",
///                      "created_at": "YYYY-MM-DD", "gas_price_wei": str,
///                      "native_usd": number, "token_usd": number,
///                      "votes": [ { "address": str, "weight": str,
///                                   "support": "for" | "against" | "abstain" } ] } ] }
///
/// Throws ValidationError naming the JSON path of the first bad field, and
/// IoError when the file cannot be read.
std::vector<ProposalSnapshot> load_snapshots(const std::filesystem::path& path);
std::vector<ProposalSnapshot> parse_snapshots(std::string_view json_text);

/// Writes snapshots back in the load schema. Weights use the shortest
/// round-trip decimal form, so parse(serialize(x)) == x. Throws DomainError
/// when the snapshots span more than one protocol.
std::string serialize_snapshots(std::span<const ProposalSnapshot> snapshots);

/// Ethereum L1: 65,000 gas per split transfer and 175,000 per vote
/// (delegate + castVote). Rollups: 500,000 gas for each.
GasProfile default_gas_profile(Chain chain) noexcept;

/// Reads `{ "split_gas": int, "vote_gas": int }`; either key may be omitted,
/// in which case `base` supplies it.
GasProfile apply_gas_overrides(const GasProfile& base, std::string_view json_text);

/// Converts gas to tokens: units * gas_price_wei / 1e18 * native_usd / token_usd
/// for each of s and v. m and p pass through.
CostScheme gas_to_cost_scheme(const ProposalSnapshot& snapshot, const GasProfile& profile,
                              double min_balance, double setup_cost);

/// Sum of f(weight) over every vote record, whatever side it supports.
double honest_power(const VotingRule& rule, const ProposalSnapshot& snapshot);

/// Sum of raw weights (the linear-rule honest power).
double total_weight(const ProposalSnapshot& snapshot);

}  // namespace sybil
