#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sybil/ingest.hpp"
#include "sybil/report.hpp"

namespace sybil::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Flat key -> values view of a JSON config file; CLI flags overwrite keys.
using Settings = std::map<std::string, std::vector<std::string>>;

/// Reads a JSON object whose values are strings, numbers or arrays of them.
Settings read_settings_file(const std::filesystem::path& path);

struct RunConfig {
  std::vector<VotingRule> rules;
  std::vector<std::filesystem::path> snapshot_paths;
  std::optional<GasProfile> gas_profile;
  double min_balance = 0.0;
  double setup_cost = 0.0;
  std::filesystem::path output;
  Format format = Format::Csv;
};

struct CurveConfig {
  VotingRule rule = VotingRule::quadratic();
  double min_balance = 0.0;
  double vote_cost = 0.0;
  double split_cost = 0.0;
  double setup_cost = 0.0;
  double token_usd = 1.0;
  double from_usd = 1.0;
  double to_usd = 1e6;
  /// 0 selects the adaptive grid.
  std::size_t points = 0;
  bool double_c = false;
  std::filesystem::path output;
  Format format = Format::Csv;
};

struct OptimalConfig {
  VotingRule rule = VotingRule::quadratic();
  double min_balance = 0.0;
  double vote_cost = 0.0;
  double split_cost = 0.0;
  double setup_cost = 0.0;
  double budget = 0.0;
};

/// Throw ConfigError on missing or malformed settings.
RunConfig make_run_config(const Settings& settings);
CurveConfig make_curve_config(const Settings& settings);
OptimalConfig make_optimal_config(const Settings& settings);

/// Each returns kExitOk on success. `cmd_analyze` returns kExitFailure when
/// any proposal failed and lists the failed ids on `err`.
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_curve(const CurveConfig& config, std::ostream& out, std::ostream& err);
int cmd_optimal(const OptimalConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `analyze`, `curve`, `optimal` and `debug {lambert,bounds}`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sybil::cli
