#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sybil/error.hpp"
#include "sybil/numeric.hpp"
#include "sybil/report.hpp"

namespace sybil {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// NaN and infinities have no JSON literal; they are written as null.
ordered_json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

double number_from(const ordered_json& node, const char* key) {
  const auto& v = node.at(key);
  if (v.is_null()) return std::nan("");
  return v.get<double>();
}

ordered_json row_json(const AnalysisReport& report, const ProposalResult& r) {
  ordered_json row;
  row["protocol"] = report.protocol;
  row["rule"] = report.rule.to_string();
  row["proposal_id"] = r.proposal_id;
  row["honest_power"] = number_or_null(r.honest_power);
  row["honest_usd"] = number_or_null(r.honest_usd);
  row["attacker_budget_tokens"] = number_or_null(r.attacker_budget_tokens);
  row["attacker_usd"] = number_or_null(r.attacker_usd);
  row["amplification"] = number_or_null(r.amplification);
  return row;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigError("unknown output format \"" + std::string(text) + "\" (expected csv or json)");
}

Format format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? Format::Json : Format::Csv;
}

void write_reports(std::ostream& out, std::span<const AnalysisReport> reports, Format format) {
  if (format == Format::Csv) {
    out << kReportCsvHeader << '\n';
    for (const auto& report : reports) {
      const std::string prefix =
          csv_field(report.protocol) + ',' + csv_field(report.rule.to_string()) + ',';
      for (const auto& r : report.per_proposal) {
        out << prefix << csv_field(r.proposal_id) << ',' << format_number(r.honest_power) << ','
            << format_number(r.honest_usd) << ',' << format_number(r.attacker_budget_tokens)
            << ',' << format_number(r.attacker_usd) << ',' << format_number(r.amplification)
            << '\n';
      }
    }
    return;
  }

  ordered_json list = ordered_json::array();
  for (const auto& report : reports) {
    ordered_json node;
    node["protocol"] = report.protocol;
    node["rule"] = report.rule.to_string();
    node["mean_attacker_usd"] = number_or_null(report.mean_attacker_usd);
    node["mean_baseline_usd"] = number_or_null(report.mean_baseline_usd);
    node["mean_amplification"] = number_or_null(report.mean_amplification);
    node["amplification_of_means"] = number_or_null(report.amplification_of_means);
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.per_proposal) rows.push_back(row_json(report, r));
    node["rows"] = std::move(rows);
    ordered_json failures = ordered_json::array();
    for (const auto& f : report.failures) {
      failures.push_back(ordered_json{{"proposal_id", f.proposal_id}, {"error", f.error}});
    }
    node["failures"] = std::move(failures);
    list.push_back(std::move(node));
  }
  ordered_json root;
  root["reports"] = std::move(list);
  out << root.dump(2) << '\n';
}

void write_curve(std::ostream& out, std::span<const CurvePoint> curve, Format format) {
  if (format == Format::Csv) {
    out << kCurveCsvHeader << '\n';
    for (const auto& pt : curve) {
      out << format_number(pt.budget_usd) << ',' << format_number(pt.honest_per_dollar) << ','
          << (pt.feasible ? format_number(pt.attacker_per_dollar) : std::string()) << ','
          << format_number(pt.kappa_line) << '\n';
    }
    return;
  }
  ordered_json points = ordered_json::array();
  for (const auto& pt : curve) {
    ordered_json node;
    node["budget_usd"] = pt.budget_usd;
    node["honest_per_dollar"] = pt.honest_per_dollar;
    node["attacker_per_dollar"] = pt.feasible ? ordered_json(pt.attacker_per_dollar) : nullptr;
    node["kappa"] = pt.kappa_line;
    points.push_back(std::move(node));
  }
  ordered_json root;
  root["points"] = std::move(points);
  out << root.dump(2) << '\n';
}

void emit_reports(std::span<const AnalysisReport> reports, Format format,
                  const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_reports(out, reports, format); });
}

void emit_curve(std::span<const CurvePoint> curve, Format format,
                const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& out) { write_curve(out, curve, format); });
}

std::vector<AnalysisReport> read_reports_json(std::string_view text) {
  try {
    const auto root = ordered_json::parse(text);
    std::vector<AnalysisReport> out;
    for (const auto& node : root.at("reports")) {
      AnalysisReport report;
      report.protocol = node.at("protocol").get<std::string>();
      report.rule = VotingRule::parse(node.at("rule").get<std::string>());
      report.mean_attacker_usd = number_from(node, "mean_attacker_usd");
      report.mean_baseline_usd = number_from(node, "mean_baseline_usd");
      report.mean_amplification = number_from(node, "mean_amplification");
      report.amplification_of_means = number_from(node, "amplification_of_means");
      for (const auto& row : node.at("rows")) {
        ProposalResult r;
        r.proposal_id = row.at("proposal_id").get<std::string>();
        r.honest_power = number_from(row, "honest_power");
        r.honest_usd = number_from(row, "honest_usd");
        r.attacker_budget_tokens = number_from(row, "attacker_budget_tokens");
        r.attacker_usd = number_from(row, "attacker_usd");
        r.amplification = number_from(row, "amplification");
        report.per_proposal.push_back(std::move(r));
      }
      for (const auto& f : node.at("failures")) {
        report.failures.push_back(
            {f.at("proposal_id").get<std::string>(), f.at("error").get<std::string>()});
      }
      out.push_back(std::move(report));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("", std::string("malformed report JSON: ") + e.what());
  }
}

std::vector<CurvePoint> read_curve_json(std::string_view text) {
  try {
    const auto root = ordered_json::parse(text);
    std::vector<CurvePoint> out;
    for (const auto& node : root.at("points")) {
      CurvePoint pt;
      pt.budget_usd = node.at("budget_usd").get<double>();
      pt.honest_per_dollar = node.at("honest_per_dollar").get<double>();
      pt.feasible = !node.at("attacker_per_dollar").is_null();
      pt.attacker_per_dollar = pt.feasible ? node.at("attacker_per_dollar").get<double>() : 0.0;
      pt.kappa_line = node.at("kappa").get<double>();
      out.push_back(pt);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("", std::string("malformed curve JSON: ") + e.what());
  }
}

}  // namespace sybil
