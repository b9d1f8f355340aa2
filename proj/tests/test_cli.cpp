#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string err;
};

Run run_cli(const std::string& args) {
  static int counter = 0;
  const auto err_path = fs::temp_directory_path() / ("foguel_cli_stderr_" + std::to_string(::getpid()) + "_" +
                                                     std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(FOGUEL_CLI_PATH) + " " + args + " >/dev/null 2>" + err_path.string();
  const int status = std::system(cmd.c_str());
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(err_path);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, PassingRunExitsZero) {
  EXPECT_EQ(run_cli("norm --symbol identity --n 1 --N 16,32").code, 0);
  EXPECT_EQ(run_cli("shift-counterexample --N 16").code, 0);
}

TEST(Cli, VerdictFailureExitsOne) {
  EXPECT_EQ(run_cli("verify-mapping --symbol identity --N 32 --delta1 0").code, 1);
}

TEST(Cli, ConfigErrorsExitTwoWithRecord) {
  const auto r = run_cli("bogus --N 8");
  EXPECT_EQ(r.code, 2);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"]["kind"], "config");
  EXPECT_EQ(j["error"]["field"], "scenario");

  EXPECT_EQ(run_cli("norm --N 8").code, 2);
  EXPECT_EQ(run_cli("norm --symbol identity --N 8,4").code, 2);
  EXPECT_EQ(run_cli("norm --symbol identity --N 8,x").code, 2);
  EXPECT_EQ(run_cli("norm --config /nonexistent/cfg.json").code, 2);
}

TEST(Cli, ConfigFileAndFlagOverrides) {
  const auto cfg = write_temp("foguel_cli_cfg_" + std::to_string(::getpid()) + ".json", R"({"scenario":"norm","symbol":{"kind":"identity"}})");
  EXPECT_EQ(run_cli("norm --config " + cfg.string() + " --N 16").code, 0);
  EXPECT_EQ(run_cli("halmos --config " + cfg.string() + " --N 16").code, 2);

  const auto bad = write_temp("foguel_cli_bad_" + std::to_string(::getpid()) + ".json", "{\n\"scenario\": \"norm\",,\n}");
  const auto r = run_cli("norm --config " + bad.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Cli, ComputationFailureExitsThree) {
  const auto r = run_cli("norm --symbol '{\"kind\":\"projection\",\"indices\":[50]}' --N 8");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"]["kind"], "numerical");
}

TEST(Cli, DimensionCapFromEnvironment) {
  EXPECT_EQ(run_cli("norm --symbol identity --N 64").code, 0);
  EXPECT_EQ(std::system((std::string("FOGUEL_MAX_DIM=32 ") + FOGUEL_CLI_PATH +
                         " norm --symbol identity --N 64 >/dev/null 2>&1")
                            .c_str()) >> 8,
            2);
}

TEST(Cli, WritesRequestedFormat) {
  const auto dir = fs::temp_directory_path() / ("foguel_cli_out_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  EXPECT_EQ(run_cli("plot-mapping --out " + (dir / "fig").string() + " --format json").code, 0);
  EXPECT_TRUE(fs::exists(dir / "fig.json"));
  EXPECT_TRUE(fs::exists(dir / "fig.svg"));
}
