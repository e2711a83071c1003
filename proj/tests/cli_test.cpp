#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecstat/cli.hpp"

using namespace ecstat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ecstat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_golden(const std::string& name, const std::string& actual) {
  const auto path = std::filesystem::path(ECSTAT_GOLDEN_DIR) / name;
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(actual, slurp(path)) << name;
}

}  // namespace

TEST(Cli, GoldenBounds) {
  const auto r = run({"bounds", "--p", "7", "--n", "1", "--theorem", "64"});
  EXPECT_EQ(r.code, 0);
  expect_golden("bounds_p7_n1_thm64.json", r.out);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["L"], 170);
  EXPECT_EQ(j["schema"], kSchemaVersion);
}

TEST(Cli, GoldenBoundsChi) {
  const auto r = run({"bounds", "--p", "7", "--n", "0", "--theorem", "53", "--trunc", "100"});
  EXPECT_EQ(r.code, 0);
  expect_golden("bounds_p7_n0_thm53_L100.json", r.out);
}

TEST(Cli, GoldenDensity) {
  const auto r = run({"densities", "--ell", "5", "--type", "In", "--n", "1"});
  EXPECT_EQ(r.code, 0);
  expect_golden("densities_ell5_In_n1.json", r.out);
  EXPECT_NE(r.out.find("16/125"), std::string::npos);
}

TEST(Cli, GoldenTables) {
  const auto r = run({"tables", "--compare-paper"});
  EXPECT_EQ(r.code, 0);
  expect_golden("tables_compare.csv", r.out);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 33);
}

TEST(Cli, TablesBeyondReferenceRange) {
  const auto r = run({"tables", "--pmin", "151", "--pmax", "200", "--compare-paper", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 11U);
  for (const auto& row : j["rows"]) EXPECT_EQ(row["status"], "no-reference");
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"tables", "--pmin", "20", "--pmax", "10"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"bounds", "--p", "9", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"bounds", "--p", "7", "--n", "1", "--theorem", "12"}).code, 2);
  EXPECT_EQ(run({"densities", "--ell", "3", "--type", "I0"}).code, 2);
  EXPECT_EQ(run({"survey", "--x", "10"}).code, 2);
  EXPECT_EQ(run({"tables", "--out", "/nonexistent-dir/x.csv"}).code, 2);
  const auto r = run({"bounds", "--p", "7", "--n", "1", "--trunc", "5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("TruncationTooSmall"), std::string::npos);
}

TEST(Cli, VerifyTablesSuite) {
  const auto r = run({"verify", "--suite", "tables"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS tables/reference_rows_7_to_149"), std::string::npos);
}

TEST(Cli, VerifyBoundsSuite) { EXPECT_EQ(run({"verify", "--suite", "bounds"}).code, 0); }

TEST(Cli, SurveySummaryIsDeterministic) {
  const std::vector<std::string> base{"survey", "--x", "300000", "--p", "7", "--seed", "9", "--mc-samples", "5000"};
  auto one = base, two = base;
  one.insert(one.end(), {"--threads", "1"});
  two.insert(two.end(), {"--threads", "2"});
  const auto a = run(one), b = run(two);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["version"], kVersion);
  EXPECT_EQ(j["x"], 300000);
  EXPECT_EQ(j["p"], 7);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["counts"]["W_count"], count_W(300000).get_ui());
  EXPECT_EQ(j["primary_congruence"], "strict");
  EXPECT_EQ(j["g_lower_bound_checks"][0]["name"], "g_density_strict");
  const auto kod = run({"survey", "--x", "300000", "--paper-congruence", "--mc-samples", "0", "--threads", "1"});
  EXPECT_EQ(nlohmann::json::parse(kod.out)["g_lower_bound_checks"][0]["name"], "g_density_kodaira_only");
}

TEST(Cli, SurveyWritesCsvAndOut) {
  const auto dir = std::filesystem::temp_directory_path() / "ecstat_cli_test";
  std::filesystem::create_directories(dir);
  const auto csv = (dir / "rows.csv").string(), out = (dir / "summary.json").string();
  const auto r = run({"survey", "--x", "10000", "--csv", csv, "--out", out, "--mc-samples", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const auto rows = slurp(csv);
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 1054);
  EXPECT_EQ(nlohmann::json::parse(slurp(out))["counts"]["W_count"], 1053);
  std::filesystem::remove_all(dir);
}
