#include <gtest/gtest.h>

#include <filesystem>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "sybil/report.hpp"

namespace sybil::cli {
namespace {

const std::filesystem::path kFixtures = SYBIL_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sybil");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = std::filesystem::temp_directory_path() /
          ("sybil_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir);
  }
  void TearDown() override { std::filesystem::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::filesystem::path dir;
};

TEST_F(CliTest, AnalyzeWritesCsv) {
  const auto r = invoke({"analyze", "--rule", "quadratic", "--snapshots",
                         (kFixtures / "ens.json").string(), "--out", path("report.csv")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = slurp(path("report.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kReportCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_NE(r.out.find("ens quadratic"), std::string::npos);
}

TEST_F(CliTest, AnalyzeIsDeterministic) {
  for (const char* name : {"a.json", "b.json"}) {
    const auto r = invoke({"analyze", "--rule", "power:0.25", "--rule", "log", "--snapshots",
                           (kFixtures / "synthetic.json").string(), "--out", path(name)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const auto reports = read_reports_json(slurp(path("a.json")));
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0].rule, VotingRule::power(0.25));
  EXPECT_EQ(reports[1].rule, VotingRule::logarithmic());
}

TEST_F(CliTest, AnalyzeRejectsBadExponent) {
  const auto r = invoke({"analyze", "--rule", "power:1.5", "--snapshots",
                         (kFixtures / "ens.json").string(), "--out", path("r.csv")});
  EXPECT_NE(r.code, kExitOk);
  EXPECT_NE(r.err.find("power"), std::string::npos);
}

TEST_F(CliTest, AnalyzeReportsValidationErrors) {
  const auto r = invoke({"analyze", "--rule", "quadratic", "--snapshots",
                         (kFixtures / "bad_weight.json").string(), "--out", path("r.csv")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("proposals[0].votes[1].weight"), std::string::npos);
}

TEST_F(CliTest, AnalyzeListsFailedProposals) {
  std::string text = slurp(kFixtures / "synthetic.json");
  for (const char* w : {"\"16\"", "\"9\"", "\"25\""}) text.replace(text.find(w), std::strlen(w), "\"0\"");
  std::ofstream(path("zero.json")) << text;
  const auto r = invoke({"analyze", "--rule", "quadratic", "--snapshots", path("zero.json"),
                         "--out", path("r.csv")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("roll-1"), std::string::npos);
  EXPECT_EQ(r.err.find("roll-2"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(path("r.csv")));
}

TEST_F(CliTest, ConfigFileMergesUnderFlags) {
  std::ofstream(path("cfg.json")) << R"({"rule": "linear", "c": 1, "budget": "50"})";
  const auto from_file = invoke({"--config", path("cfg.json"), "optimal"});
  EXPECT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_NE(from_file.out.find("V*          49\n"), std::string::npos) << from_file.out;
  const auto overridden = invoke({"--config", path("cfg.json"), "optimal", "--budget", "100"});
  EXPECT_NE(overridden.out.find("V*          99\n"), std::string::npos) << overridden.out;
}

TEST_F(CliTest, CurveStaysUnderKappa) {
  const auto r = invoke({"curve", "--rule", "quadratic", "--c", "1.0", "--token-usd", "1",
                         "--from", "1", "--to", "1e6", "--out", path("curve.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto curve = read_curve_json(slurp(path("curve.json")));
  ASSERT_GT(curve.size(), 100u);
  for (const auto& p : curve) {
    EXPECT_LE(p.attacker_per_dollar, 0.5 + 1e-9);
    EXPECT_NEAR(p.kappa_line, 0.5, 1e-12);
  }
}

TEST_F(CliTest, CurveVariants) {
  const auto doubled = invoke({"curve", "--rule", "quadratic", "--c", "1", "--points", "20",
                               "--double-c", "--format", "json"});
  ASSERT_EQ(doubled.code, kExitOk) << doubled.err;
  for (const auto& p : read_curve_json(doubled.out)) EXPECT_NEAR(p.kappa_line, 0.35355, 1e-5);

  const auto raised = invoke({"curve", "--rule", "quadratic", "--c", "1", "--points", "20",
                              "--min-balance", "2", "--format", "json"});
  ASSERT_EQ(raised.code, kExitOk) << raised.err;
  for (const auto& p : read_curve_json(raised.out)) EXPECT_NEAR(p.kappa_line, 0.4714, 1e-4);
}

TEST_F(CliTest, CurveRejectsBadRange) {
  EXPECT_EQ(invoke({"curve", "--c", "1", "--from", "10", "--to", "5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"curve", "--c", "1", "--from", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"curve", "--c", "abc"}).code, kExitUsage);
}

TEST_F(CliTest, OptimalExamples) {
  const auto q = invoke({"optimal", "--rule", "quadratic", "--v", "1", "--budget", "100"});
  EXPECT_EQ(q.code, kExitOk);
  EXPECT_NE(q.out.find("n           50\n"), std::string::npos) << q.out;
  EXPECT_NE(q.out.find("w*          1\n"), std::string::npos);
  EXPECT_NE(q.out.find("V*          50\n"), std::string::npos);
  EXPECT_NE(q.out.find("closed_form 50\n"), std::string::npos);

  const auto lin = invoke({"optimal", "--rule", "linear", "--v", "1", "--budget", "100"});
  EXPECT_NE(lin.out.find("n           1\n"), std::string::npos) << lin.out;
  EXPECT_NE(lin.out.find("V*          99\n"), std::string::npos);

  const auto bound =
      invoke({"optimal", "--rule", "quadratic", "--m", "10", "--v", "1", "--budget", "100"});
  EXPECT_NE(bound.out.find("n           9\n"), std::string::npos) << bound.out;
  EXPECT_NE(bound.out.find("binding     true\n"), std::string::npos);
  EXPECT_NE(bound.out.find("binding_approximation"), std::string::npos);
}

TEST_F(CliTest, OptimalInfeasible) {
  const auto r = invoke({"optimal", "--rule", "quadratic", "--m", "10", "--v", "1", "--budget", "5"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, DebugSubcommands) {
  const auto w = invoke({"debug", "lambert", "--z", "1"});
  EXPECT_EQ(w.code, kExitOk);
  EXPECT_EQ(w.out.substr(0, 12), "0.5671432904");
  EXPECT_EQ(invoke({"debug", "lambert", "--z", "-1"}).code, kExitFailure);
  const auto b = invoke({"debug", "bounds", "--rule", "quadratic", "--m", "4", "--budget", "100"});
  EXPECT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(b.out.find("alpha               0.25\n"), std::string::npos) << b.out;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"optimal", "--rule", "quadratic", "--v", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"optimal", "--c", "1", "--v", "1", "--budget", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"analyze", "--rule", "quadratic"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Settings, ConfigFileValues) {
  const auto file = std::filesystem::temp_directory_path() / "sybil_settings.json";
  std::ofstream(file) << R"({"rule": ["quadratic", "log"], "min_balance": 2.5, "double_c": true})";
  const Settings s = read_settings_file(file);
  EXPECT_EQ(s.at("rule"), (std::vector<std::string>{"quadratic", "log"}));
  EXPECT_EQ(s.at("min_balance"), std::vector<std::string>{"2.5"});
  EXPECT_EQ(s.at("double_c"), std::vector<std::string>{"true"});
  std::filesystem::remove(file);
}

}  // namespace
}  // namespace sybil::cli
