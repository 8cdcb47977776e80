// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rtune/cli/cli.hpp"
#include "rtune/cli/report.hpp"

using namespace rtune;
namespace fs = std::filesystem;

namespace {

const std::string kSuite = std::string(RTUNE_SOURCE_DIR) + "/corpus/suite/";
const std::string kVersions = std::string(RTUNE_SOURCE_DIR) + "/corpus/versions/";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rtune");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rtune_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST(Duration, Units) {
  EXPECT_DOUBLE_EQ(parse_duration("2s"), 2);
  EXPECT_DOUBLE_EQ(parse_duration("250ms"), 0.25);
  EXPECT_DOUBLE_EQ(parse_duration("1m"), 60);
  EXPECT_DOUBLE_EQ(parse_duration("3"), 3);
}

TEST_F(CliTest, AnalyzeDefaultRecipe) {
  const CliRun r = cli({"analyze", "--program", kSuite + "p00.air"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const RunReport rep = report_from_json(j);
  EXPECT_EQ(rep.command, "analyze");
  EXPECT_EQ(rep.recipes.at("analyzed"), default_recipe());
  EXPECT_EQ(to_json(rep), j);
}

TEST_F(CliTest, TuneWritesRecipeAndTable) {
  const CliRun r = cli({"tune", "--program", kSuite + "p01.air", "--seed", "3", "--out", path("r.json"), "--recipe-out",
                     path("t.recipe")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("best recipe"), std::string::npos);
  const Recipe rec = load_recipe(path("t.recipe"));
  std::ifstream in(path("r.json"));
  const RunReport rep = report_from_json(nlohmann::json::parse(in));
  EXPECT_EQ(rep.recipes.at("tuned"), rec);
  ASSERT_TRUE(rep.search.has_value());
  EXPECT_EQ(rep.search->total_candidates, 40u);
}

TEST_F(CliTest, CompareBreakdownCoversTunedAndDefault) {
  const CliRun r = cli({"compare", "--program", kSuite + "p02.air", "--domain-iters", "2", "--settings-iters", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const RunReport rep = report_from_json(j);
  const auto& b = j["details"]["breakdown"];
  EXPECT_EQ(b["both"].size() + b["only_tuned"].size(), rep.outcomes.at("tuned").verified().size());
  EXPECT_EQ(b["both"].size() + b["only_default"].size(), rep.outcomes.at("default").verified().size());
  EXPECT_EQ(rep.recipes.at("most_precise").size(), 4u);
}

TEST_F(CliTest, OracleWithTuner) {
  const CliRun r = cli({"oracle", "--program", kSuite + "p03.air", "--domains", "intervals;zones;bool", "--max-len", "2",
                     "--with-tuner"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["details"]["space_size"], 7);
  EXPECT_GE(j["details"]["gap"].get<double>(), 0.0);
}

TEST_F(CliTest, ReplayClassifiesAgainstOldVersion) {
  write("r.recipe", "[ingredient]\ndomain = octagons\n");
  const CliRun r = cli({"replay", "--program", kVersions + "v0_new.air", "--old-program", kVersions + "v0_old.air",
                     "--recipe", path("r.recipe")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const long diff = j["details"]["diff"];
  const std::string cls = j["details"]["classification"];
  EXPECT_EQ(j["details"]["reference"], "old_on_old");
  EXPECT_EQ(cls, std::abs(diff) <= 1 ? "equal" : (diff > 0 ? "positive" : "negative"));
}

TEST_F(CliTest, UserErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"tune"}).code, kExitUsage);
  EXPECT_EQ(cli({"analyze", "--program", path("missing.air")}).code, kExitUsage);
  write("bad.air", "fn main { block e { goto nowhere; } }");
  const CliRun bad = cli({"analyze", "--program", path("bad.air")});
  EXPECT_EQ(bad.code, kExitUsage);
  EXPECT_NE(bad.err.find("dangling"), std::string::npos);
  write("poly.recipe", "[ingredient]\ndomain = polyhedra\n");
  const CliRun poly = cli({"analyze", "--program", kSuite + "p00.air", "--recipe", path("poly.recipe")});
  EXPECT_EQ(poly.code, kExitUsage);
  EXPECT_NE(poly.err.find("unimplemented"), std::string::npos);
  EXPECT_EQ(cli({"tune", "--program", kSuite + "p00.air", "--algo", "ga"}).code, kExitUsage);
  EXPECT_EQ(cli({"tune", "--program", kSuite + "p00.air", "--max-len", "5", "--recipe-out", path("x")}).code,
            kExitUsage);
  EXPECT_EQ(cli({"replay", "--program", kSuite + "p00.air", "--recipe", path("poly.recipe")}).code, kExitUsage);
}
