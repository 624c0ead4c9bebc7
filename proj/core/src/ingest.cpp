#include "sybil/ingest.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"

namespace sybil {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kWeiPerNative = 1e18;

std::string index_path(const std::string& parent, std::string_view key, std::size_t i) {
  return parent + (parent.empty() ? "" : ".") + std::string(key) + "[" + std::to_string(i) + "]";
}

std::string key_path(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

const json& require(const json& obj, const std::string& parent, std::string_view key) {
  if (!obj.is_object()) throw ValidationError(parent, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(key_path(parent, key), "missing field");
  return *it;
}

std::string require_string(const json& obj, const std::string& parent, std::string_view key) {
  const json& v = require(obj, parent, key);
  if (!v.is_string()) throw ValidationError(key_path(parent, key), "expected a string");
  return v.get<std::string>();
}

double require_positive_number(const json& obj, const std::string& parent, std::string_view key) {
  const json& v = require(obj, parent, key);
  const std::string path = key_path(parent, key);
  double value = 0.0;
  if (v.is_number()) {
    value = v.get<double>();
  } else if (v.is_string()) {
    try {
      value = parse_decimal(v.get<std::string>(), key);
    } catch (const ConfigError& e) {
      throw ValidationError(path, e.what());
    }
  } else {
    throw ValidationError(path, "expected a number");
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(path, "must be positive, got " + format_number(value));
  }
  return value;
}

Chain parse_chain(const std::string& text, const std::string& path) {
  if (text == "ethereum") return Chain::EthereumL1;
  if (text == "rollup") return Chain::Rollup;
  throw ValidationError(path, "unknown chain \"" + text + "\" (expected ethereum or rollup)");
}

Support parse_support(const std::string& text, const std::string& path) {
  if (text == "for") return Support::For;
  if (text == "against") return Support::Against;
  if (text == "abstain") return Support::Abstain;
  throw ValidationError(path, "unknown support \"" + text + "\" (expected for, against or abstain)");
}

void validate_date(const std::string& text, const std::string& path) {
  const bool shape = text.size() == 10 && text[4] == '-' && text[7] == '-';
  int y = 0;
  unsigned mo = 0;
  unsigned d = 0;
  if (shape) {
    try {
      y = static_cast<int>(parse_uint(std::string_view(text).substr(0, 4), "year"));
      mo = static_cast<unsigned>(parse_uint(std::string_view(text).substr(5, 2), "month"));
      d = static_cast<unsigned>(parse_uint(std::string_view(text).substr(8, 2), "day"));
    } catch (const ConfigError&) {
      throw ValidationError(path, "expected YYYY-MM-DD, got \"" + text + "\"");
    }
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                        std::chrono::day{d}};
  if (!shape || !ymd.ok()) throw ValidationError(path, "expected YYYY-MM-DD, got \"" + text + "\"");
}

VoteRecord parse_vote(const json& node, const std::string& path) {
  VoteRecord vote;
  vote.address = require_string(node, path, "address");
  const std::string weight_path = key_path(path, "weight");
  const std::string weight_text = require_string(node, path, "weight");
  try {
    vote.weight = parse_decimal(weight_text, "weight");
  } catch (const ConfigError& e) {
    throw ValidationError(weight_path, e.what());
  }
  if (!(vote.weight >= 0.0)) {
    throw ValidationError(weight_path, "must be >= 0, got \"" + weight_text + "\"");
  }
  vote.support = parse_support(require_string(node, path, "support"), key_path(path, "support"));
  return vote;
}

ProposalSnapshot parse_proposal(const json& node, const std::string& protocol,
                                const std::string& path) {
  ProposalSnapshot snap;
  snap.protocol = protocol;
  snap.proposal_id = require_string(node, path, "id");
  snap.chain = parse_chain(require_string(node, path, "chain"), key_path(path, "chain"));
  snap.created_at = require_string(node, path, "created_at");
  validate_date(snap.created_at, key_path(path, "created_at"));

  const std::string gas_path = key_path(path, "gas_price_wei");
  try {
    snap.gas_price_wei = parse_uint(require_string(node, path, "gas_price_wei"), "gas_price_wei");
  } catch (const ConfigError& e) {
    throw ValidationError(gas_path, e.what());
  }
  if (snap.gas_price_wei == 0) throw ValidationError(gas_path, "must be positive");

  snap.native_usd = require_positive_number(node, path, "native_usd");
  snap.token_usd = require_positive_number(node, path, "token_usd");

  const json& votes = require(node, path, "votes");
  if (!votes.is_array()) throw ValidationError(key_path(path, "votes"), "expected an array");
  if (votes.empty()) throw ValidationError(key_path(path, "votes"), "needs at least one vote record");
  snap.votes.reserve(votes.size());
  for (std::size_t i = 0; i < votes.size(); ++i) {
    snap.votes.push_back(parse_vote(votes[i], index_path(path, "votes", i)));
  }
  return snap;
}

}  // namespace

std::string_view to_string(Chain chain) noexcept {
  return chain == Chain::EthereumL1 ? "ethereum" : "rollup";
}

std::string_view to_string(Support support) noexcept {
  switch (support) {
    case Support::For:
      return "for";
    case Support::Against:
      return "against";
    case Support::Abstain:
      return "abstain";
  }
  return "";
}

std::vector<ProposalSnapshot> parse_snapshots(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
  const std::string protocol = require_string(root, "", "protocol");
  if (protocol.empty()) throw ValidationError("protocol", "must not be empty");
  const json& proposals = require(root, "", "proposals");
  if (!proposals.is_array()) throw ValidationError("proposals", "expected an array");

  std::vector<ProposalSnapshot> out;
  out.reserve(proposals.size());
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    out.push_back(parse_proposal(proposals[i], protocol, index_path("", "proposals", i)));
  }
  return out;
}

std::vector<ProposalSnapshot> load_snapshots(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_snapshots(buffer.str());
  } catch (const ValidationError& e) {
    throw ValidationError(e.field(), e.message() + " (in " + path.string() + ")");
  }
}

std::string serialize_snapshots(std::span<const ProposalSnapshot> snapshots) {
  ordered_json root;
  root["protocol"] = snapshots.empty() ? std::string() : snapshots.front().protocol;
  ordered_json proposals = ordered_json::array();
  for (const auto& snap : snapshots) {
    if (snap.protocol != root["protocol"].get<std::string>()) {
      throw DomainError("serialize_snapshots: mixed protocols \"" +
                        root["protocol"].get<std::string>() + "\" and \"" + snap.protocol + "\"");
    }
    ordered_json p;
    p["id"] = snap.proposal_id;
    p["chain"] = std::string(to_string(snap.chain));
    p["created_at"] = snap.created_at;
    p["gas_price_wei"] = std::to_string(snap.gas_price_wei);
    p["native_usd"] = snap.native_usd;
    p["token_usd"] = snap.token_usd;
    ordered_json votes = ordered_json::array();
    for (const auto& vote : snap.votes) {
      ordered_json v;
      v["address"] = vote.address;
      v["weight"] = format_number(vote.weight);
      v["support"] = std::string(to_string(vote.support));
      votes.push_back(std::move(v));
    }
    p["votes"] = std::move(votes);
    proposals.push_back(std::move(p));
  }
  root["proposals"] = std::move(proposals);
  return root.dump(2) + "\n";
}

GasProfile default_gas_profile(Chain chain) noexcept {
  switch (chain) {
    case Chain::EthereumL1:
      return {65'000, 175'000};
    case Chain::Rollup:
      return {500'000, 500'000};
  }
  return {};
}

GasProfile apply_gas_overrides(const GasProfile& base, std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed gas profile JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("", "gas profile must be a JSON object");
  GasProfile out = base;
  auto read = [&](std::string_view key, std::uint64_t& slot) {
    auto it = root.find(key);
    if (it == root.end()) return;
    if (!it->is_number_unsigned() || it->get<std::uint64_t>() == 0) {
      throw ValidationError(std::string(key), "expected a positive integer");
    }
    slot = it->get<std::uint64_t>();
  };
  read("split_gas", out.split_gas);
  read("vote_gas", out.vote_gas);
  return out;
}

CostScheme gas_to_cost_scheme(const ProposalSnapshot& snapshot, const GasProfile& profile,
                              double min_balance, double setup_cost) {
  if (profile.split_gas == 0 || profile.vote_gas == 0) {
    throw DomainError("gas profile units must be positive");
  }
  const double price = static_cast<double>(snapshot.gas_price_wei);
  auto to_tokens = [&](std::uint64_t units) {
    const double native = static_cast<double>(units) * price / kWeiPerNative;
    return native * snapshot.native_usd / snapshot.token_usd;
  };
  return CostScheme(min_balance, to_tokens(profile.vote_gas), setup_cost,
                    to_tokens(profile.split_gas));
}

double honest_power(const VotingRule& rule, const ProposalSnapshot& snapshot) {
  double total = 0.0;
  for (const auto& vote : snapshot.votes) total += rule.eval(vote.weight);
  return total;
}

double total_weight(const ProposalSnapshot& snapshot) {
  double total = 0.0;
  for (const auto& vote : snapshot.votes) total += vote.weight;
  return total;
}

}  // namespace sybil
