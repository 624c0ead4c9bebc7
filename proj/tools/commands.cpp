#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "sybil/closedform.hpp"
#include "sybil/error.hpp"
#include "sybil/lambert_w.hpp"
#include "sybil/numeric.hpp"
#include "sybil/optimizer.hpp"

namespace sybil::cli {

namespace {

const std::vector<std::string>* find(const Settings& s, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end() || it->second.empty()) return nullptr;
  return &it->second;
}

std::string last_or(const Settings& s, const std::string& key, std::string fallback) {
  const auto* v = find(s, key);
  return v ? v->back() : fallback;
}

double decimal_or(const Settings& s, const std::string& key, double fallback) {
  const auto* v = find(s, key);
  return v ? parse_decimal(v->back(), key) : fallback;
}

double nonnegative(const Settings& s, const std::string& key, double fallback = 0.0) {
  const double value = decimal_or(s, key, fallback);
  if (value < 0.0) throw ConfigError(key + " must be nonnegative");
  return value;
}

double required_positive(const Settings& s, const std::string& key) {
  if (!find(s, key)) throw ConfigError("missing required setting " + key);
  const double value = parse_decimal(find(s, key)->back(), key);
  if (!(value > 0.0)) throw ConfigError(key + " must be positive");
  return value;
}

bool flag(const Settings& s, const std::string& key) {
  const std::string v = last_or(s, key, "false");
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(key + " must be true or false, got \"" + v + "\"");
}

Format format_setting(const Settings& s, const std::filesystem::path& output) {
  const auto* v = find(s, "format");
  return v ? parse_format(v->back()) : format_for_path(output);
}

// Per-wallet costs from either --c (all of it charged as v) or --v/--s.
std::pair<double, double> wallet_costs(const Settings& s) {
  if (find(s, "c")) {
    if (find(s, "vote_cost") || find(s, "split_cost")) {
      throw ConfigError("give either c or vote_cost/split_cost, not both");
    }
    return {nonnegative(s, "c"), 0.0};
  }
  return {nonnegative(s, "vote_cost"), nonnegative(s, "split_cost")};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Settings read_settings_file(const std::filesystem::path& path) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config " + path.string() + " must be a JSON object");

  auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw ConfigError("config key " + key + " must be a string, number or boolean");
  };
  Settings out;
  for (const auto& [key, value] : root.items()) {
    auto& slot = out[key];
    if (value.is_array()) {
      for (const auto& item : value) slot.push_back(scalar(key, item));
    } else {
      slot.push_back(scalar(key, value));
    }
  }
  return out;
}

RunConfig make_run_config(const Settings& s) {
  RunConfig config;
  const auto* rules = find(s, "rule");
  if (!rules) throw ConfigError("analyze needs at least one --rule");
  for (const auto& r : *rules) config.rules.push_back(VotingRule::parse(r));

  const auto* snapshots = find(s, "snapshots");
  if (!snapshots) throw ConfigError("analyze needs at least one --snapshots file");
  for (const auto& p : *snapshots) {
    if (p.empty()) throw ConfigError("snapshot path must not be empty");
    config.snapshot_paths.emplace_back(p);
  }

  if (const auto* profile = find(s, "gas_profile")) {
    const std::string text = read_text(profile->back());
    const auto root = nlohmann::json::parse(text);
    if (!root.is_object() || !root.contains("split_gas") || !root.contains("vote_gas")) {
      throw ConfigError("gas profile " + profile->back() + " needs split_gas and vote_gas");
    }
    config.gas_profile = apply_gas_overrides(default_gas_profile(Chain::EthereumL1), text);
  }
  if (find(s, "split_gas") || find(s, "vote_gas")) {
    if (!find(s, "split_gas") || !find(s, "vote_gas")) {
      throw ConfigError("split_gas and vote_gas must be given together");
    }
    GasProfile profile{parse_uint(find(s, "split_gas")->back(), "split_gas"),
                       parse_uint(find(s, "vote_gas")->back(), "vote_gas")};
    if (profile.split_gas == 0 || profile.vote_gas == 0) {
      throw ConfigError("gas units must be positive");
    }
    config.gas_profile = profile;
  }

  config.min_balance = nonnegative(s, "min_balance");
  config.setup_cost = nonnegative(s, "setup_cost");
  config.output = last_or(s, "output", "");
  if (config.output.empty()) throw ConfigError("analyze needs --out");
  config.format = format_setting(s, config.output);
  return config;
}

CurveConfig make_curve_config(const Settings& s) {
  CurveConfig config;
  config.rule = VotingRule::parse(last_or(s, "rule", "quadratic"));
  std::tie(config.vote_cost, config.split_cost) = wallet_costs(s);
  config.min_balance = nonnegative(s, "min_balance");
  config.setup_cost = nonnegative(s, "setup_cost");
  config.token_usd = decimal_or(s, "token_usd", 1.0);
  if (!(config.token_usd > 0.0)) throw ConfigError("token_usd must be positive");
  config.from_usd = decimal_or(s, "from", 1.0);
  config.to_usd = decimal_or(s, "to", 1e6);
  if (!(config.from_usd > 0.0) || !(config.to_usd > config.from_usd)) {
    throw ConfigError("budget range needs 0 < from < to");
  }
  if (const auto* points = find(s, "points")) {
    config.points = parse_uint(points->back(), "points");
    if (config.points < 2) throw ConfigError("points must be at least 2");
  }
  config.double_c = flag(s, "double_c");
  config.output = last_or(s, "output", "");
  config.format = format_setting(s, config.output);
  return config;
}

OptimalConfig make_optimal_config(const Settings& s) {
  OptimalConfig config;
  config.rule = VotingRule::parse(last_or(s, "rule", "quadratic"));
  std::tie(config.vote_cost, config.split_cost) = wallet_costs(s);
  config.min_balance = nonnegative(s, "min_balance");
  config.setup_cost = nonnegative(s, "setup_cost");
  config.budget = required_positive(s, "budget");
  return config;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
  AnalysisOptions options;
  options.gas_override = config.gas_profile;
  options.min_balance = config.min_balance;
  options.setup_cost = config.setup_cost;

  std::vector<AnalysisReport> reports;
  for (const auto& path : config.snapshot_paths) {
    const auto snapshots = load_snapshots(path);
    if (snapshots.empty()) throw ConfigError(path.string() + " contains no proposals");
    for (const auto& rule : config.rules) {
      reports.push_back(analyze_protocol(snapshots, rule, options));
    }
  }
  emit_reports(reports, config.format, config.output);

  bool failed = false;
  for (const auto& report : reports) {
    out << report.protocol << " " << report.rule.to_string() << ": "
        << report.per_proposal.size() << " proposals, mean attacker $"
        << format_significant(report.mean_attacker_usd) << " vs linear $"
        << format_significant(report.mean_baseline_usd) << " ("
        << format_significant(report.amplification_of_means) << "x)\n";
    for (const auto& f : report.failures) {
      failed = true;
      err << "failed: " << report.protocol << " " << report.rule.to_string() << " proposal "
          << f.proposal_id << ": " << f.error << "\n";
    }
  }
  out << "wrote " << config.output.string() << "\n";
  return failed ? kExitFailure : kExitOk;
}

int cmd_curve(const CurveConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const double scale = config.double_c ? 2.0 : 1.0;
  const CostScheme costs(config.min_balance, scale * config.vote_cost, config.setup_cost,
                         scale * config.split_cost);
  const double from = config.from_usd / config.token_usd;
  const double to = config.to_usd / config.token_usd;
  const std::vector<double> budgets = config.points > 0
                                          ? log_budget_grid(from, to, config.points)
                                          : adaptive_budget_grid(config.rule, costs, from, to);
  const auto curve = per_dollar_curve(config.rule, costs, config.token_usd, budgets);
  if (config.output.empty()) {
    write_curve(out, curve, config.format);
  } else {
    emit_curve(curve, config.format, config.output);
    out << "wrote " << curve.size() << " points to " << config.output.string() << "\n";
  }
  return kExitOk;
}

int cmd_optimal(const OptimalConfig& config, std::ostream& out, std::ostream& /*err*/) {
  const CostScheme costs(config.min_balance, config.vote_cost, config.setup_cost,
                         config.split_cost);
  const AttackPlan plan = optimal_split(config.rule, costs, config.budget);
  const RelaxedOptimum relaxed = relaxed_optimum(config.rule, costs);

  out << "rule        " << config.rule.to_string() << "\n"
      << "budget      " << format_number(plan.budget) << "\n"
      << "n           " << plan.wallets << "\n"
      << "w*          " << format_number(plan.per_wallet) << "\n"
      << "V*          " << format_number(plan.total_power) << "\n"
      << "binding     " << (plan.binding_min ? "true" : "false") << "\n"
      << "kappa       " << format_number(relaxed.kappa) << "\n";
  if (plan.binding_min) {
    const double approx = binding_approximation(config.rule, costs, config.budget);
    out << "binding_approximation " << format_number(approx) << "\n"
        << "relative_gap " << format_number((approx - plan.total_power) / approx) << "\n";
  } else {
    const double closed = closed_form_power(config.rule, costs, config.budget);
    out << "closed_form " << format_number(closed) << "\n"
        << "relative_gap " << format_number((closed - plan.total_power) / closed) << "\n";
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sybil attack cost model for wallet-based DAO voting"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config merged under command-line flags");

  // Each flag maps onto a settings key; set flags replace config values.
  struct Binding {
    CLI::Option* option;
    std::string key;
    std::string scoped;
  };
  std::vector<Binding> bindings;
  std::map<std::string, std::vector<std::string>> raw;
  auto bind = [&](CLI::App* sub, const std::string& names, const std::string& key,
                  const std::string& help) {
    const std::string scoped = sub->get_name() + "/" + key;
    bindings.push_back({sub->add_option(names, raw[scoped], help), key, scoped});
  };
  auto bind_cost_flags = [&](CLI::App* sub) {
    bind(sub, "--m,--min-balance", "min_balance", "minimum voting balance (tokens)");
    bind(sub, "--v,--vote-cost", "vote_cost", "per-wallet voting cost (tokens)");
    bind(sub, "--s,--split-cost", "split_cost", "per-wallet splitting cost (tokens)");
    bind(sub, "--p,--setup-cost", "setup_cost", "fixed setup cost (tokens)");
    bind(sub, "--c", "c", "total per-wallet cost v + s (tokens)");
  };

  auto* analyze = app.add_subcommand("analyze", "replay proposals and price the attack");
  bind(analyze, "--rule", "rule", "linear | quadratic | power:<beta> | log (repeatable)");
  bind(analyze, "--snapshots", "snapshots", "snapshot JSON file (repeatable)");
  bind(analyze, "--out,--output", "output", "report path");
  bind(analyze, "--format", "format", "csv | json (default from extension)");
  bind(analyze, "--m,--min-balance", "min_balance", "minimum voting balance (tokens)");
  bind(analyze, "--p,--setup-cost", "setup_cost", "fixed setup cost (tokens)");
  bind(analyze, "--split-gas", "split_gas", "gas units per split transfer");
  bind(analyze, "--vote-gas", "vote_gas", "gas units per vote");
  bind(analyze, "--gas-profile", "gas_profile", "JSON file with split_gas and vote_gas");

  auto* curve = app.add_subcommand("curve", "voting power per dollar over a budget range");
  bind(curve, "--rule", "rule", "voting rule");
  bind_cost_flags(curve);
  bind(curve, "--token-usd", "token_usd", "USD per governance token");
  bind(curve, "--from", "from", "smallest budget (USD)");
  bind(curve, "--to", "to", "largest budget (USD)");
  bind(curve, "--points", "points", "fixed log-grid size (default: adaptive grid)");
  bind(curve, "--out,--output", "output", "output path (default stdout)");
  bind(curve, "--format", "format", "csv | json");
  bool double_c = false;
  auto* double_c_flag = curve->add_flag("--double-c", double_c, "double the per-wallet cost");

  auto* optimal = app.add_subcommand("optimal", "optimal split for one budget");
  bind(optimal, "--rule", "rule", "voting rule");
  bind_cost_flags(optimal);
  bind(optimal, "--budget", "budget", "attacker budget (tokens)");

  auto* debug = app.add_subcommand("debug", "numerical internals");
  debug->require_subcommand(1);
  auto* lambert = debug->add_subcommand("lambert", "principal-branch Lambert W");
  std::string z_text;
  lambert->add_option("--z", z_text, "argument (>= -1/e)")->required();
  auto* bounds = debug->add_subcommand("bounds", "lower and upper bounds around V*");
  bind(bounds, "--rule", "rule", "voting rule");
  bind_cost_flags(bounds);
  bind(bounds, "--budget", "budget", "attacker budget (tokens)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Settings settings;
    if (!config_path.empty()) settings = read_settings_file(config_path);
    for (const auto& b : bindings) {
      if (b.option->count() > 0) settings[b.key] = raw[b.scoped];
    }
    if (double_c_flag->count() > 0) settings["double_c"] = {double_c ? "true" : "false"};

    if (analyze->parsed()) return cmd_analyze(make_run_config(settings), out, err);
    if (curve->parsed()) return cmd_curve(make_curve_config(settings), out, err);
    if (optimal->parsed()) return cmd_optimal(make_optimal_config(settings), out, err);
    if (lambert->parsed()) {
      out << format_number(lambert_w0(parse_decimal(z_text, "z"))) << "\n";
      return kExitOk;
    }
    if (bounds->parsed()) {
      const OptimalConfig c = make_optimal_config(settings);
      const CostScheme costs(c.min_balance, c.vote_cost, c.setup_cost, c.split_cost);
      const AttackPlan plan = optimal_split(c.rule, costs, c.budget);
      const PlutocracyBound pb = plutocracy_bound(c.rule, costs);
      const double kappa = relaxed_optimum(c.rule, costs).kappa;
      out << "costed_lower_bound  " << format_number(costed_lower_bound(c.rule, costs, c.budget))
          << "\n"
          << "V*                  " << format_number(plan.total_power) << "\n"
          << "kappa_upper_bound   " << format_number(kappa * costs.usable_budget(c.budget)) << "\n"
          << "alpha               " << format_number(pb.alpha) << "\n"
          << "a0                  " << format_number(pb.a0) << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sybil::cli
