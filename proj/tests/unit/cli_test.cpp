#include "dlaplace_cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace dlaplace::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dlaplace_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ParsesSpecExamples) {
  const auto a = parse_config({"sum-limit", "--c", "0.8", "--n", "400,800,1600", "-o", path("s.csv")});
  EXPECT_EQ(a.subcommand, "sum-limit");
  EXPECT_DOUBLE_EQ(a.c, 0.8);
  EXPECT_EQ(a.n_list, (std::vector<std::int64_t>{400, 800, 1600}));
  EXPECT_EQ(a.format, Format::csv);

  const auto b = parse_config({"simulate", "--c", "0.85", "--n", "300", "--trials", "200", "--seed", "7"});
  EXPECT_EQ(b.subcommand, "simulate");
  EXPECT_EQ(b.n, 300);
  EXPECT_EQ(b.trials, 200);
  EXPECT_EQ(b.seed, 7u);
  EXPECT_EQ(b.format, Format::json);
}

TEST_F(CliTest, RejectsOutOfRegime) {
  try {
    (void)parse_config({"sum-limit", "--c", "1.2"});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("--c"), std::string::npos) << msg;
    EXPECT_NE(msg.find("(2/3, 1)"), std::string::npos) << msg;
    EXPECT_EQ(msg.find('\n'), std::string::npos);
  }
  EXPECT_THROW((void)parse_config({"simulate", "--trials", "0"}), ConfigError);
  EXPECT_THROW((void)parse_config({"simulate", "--format", "xml"}), ConfigError);
  EXPECT_THROW((void)parse_config({"bounds-check", "--m", "5", "--n", "20"}), ConfigError);
  EXPECT_THROW((void)parse_config({"hy-min", "--y", "3.5"}), ConfigError);
  EXPECT_THROW((void)parse_config({"frobnicate"}), ConfigError);
  EXPECT_THROW((void)parse_config({}), ConfigError);
}

TEST_F(CliTest, VersionAndHelp) {
  const auto v = parse_config({"--version"});
  EXPECT_EQ(v.action, Action::version);
  EXPECT_NE(v.text.find("table format"), std::string::npos);
  const auto h = parse_config({"simulate", "--help"});
  EXPECT_EQ(h.action, Action::help);
  EXPECT_NE(h.text.find("--trials"), std::string::npos);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ::setenv(kOutputDirEnv, dir_.c_str(), 1);
  const auto cfg = parse_config({"alpha-curve"});
  ::unsetenv(kOutputDirEnv);
  EXPECT_EQ(cfg.output_path, path("alpha-curve.csv"));
}

TEST_F(CliTest, HyMinReportsCentre) {
  const auto cfg = parse_config({"hy-min", "--y", "2.5", "--grid", "100", "-o", path("h.csv")});
  std::ostringstream out;
  EXPECT_EQ(run(cfg, out), 0);
  EXPECT_NE(out.str().find("minimum at (0.500000, 0.500000)"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("[PASS]"), std::string::npos);
}

TEST_F(CliTest, SumLimitWritesRowPerN) {
  const auto cfg = parse_config({"sum-limit", "--c", "0.8", "--n", "100,200", "-o", path("s.csv")});
  std::ostringstream out;
  EXPECT_EQ(run(cfg, out), 0);
  std::istringstream csv(slurp(cfg.output_path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,m,normalized_sum,corner_term,err_vs_1");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST_F(CliTest, IdenticalConfigGivesIdenticalFiles) {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"simulate", "--n", "120", "--trials", "40", "--seed", "3"},
        std::vector<std::string>{"bounds-check", "--trials", "20", "--seed", "3"},
        std::vector<std::string>{"laplace-demo", "--n", "100,1000"}}) {
    std::string first;
    for (int k = 0; k < 2; ++k) {
      auto args = base;
      args.insert(args.end(), {"--threads", k == 0 ? "1" : "3", "-o", path(base[0] + std::to_string(k))});
      const auto cfg = parse_config(args);
      std::ostringstream out;
      ASSERT_EQ(run(cfg, out), 0);
      const std::string body = slurp(cfg.output_path);
      ASSERT_FALSE(body.empty());
      if (k == 0) first = body;
      else EXPECT_EQ(body, first) << base[0];
    }
  }
}

TEST_F(CliTest, JsonReportSchema) {
  const auto cfg = parse_config({"simulate", "--n", "100", "--trials", "10", "-o", path("r.json")});
  std::ostringstream out;
  ASSERT_EQ(run(cfg, out), 0);
  const std::string body = slurp(cfg.output_path);
  std::size_t last = 0;
  for (const char* key : {"\"c\"", "\"n\"", "\"m\"", "\"trials\"", "\"p_hat\"", "\"wilson_lo\"", "\"wilson_hi\"", "\"bins\"",
                          "\"ratio_lo\"", "\"ratio_hi\"", "\"count\"", "\"solvable_frac\""}) {
    const auto at = body.find(key);
    ASSERT_NE(at, std::string::npos) << key;
    EXPECT_GT(at, last) << key;
    last = at;
  }
}

TEST_F(CliTest, ModuleErrorsPropagate) {
  auto cfg = parse_config({"stirling", "--p-max", "10"});
  cfg.output_path = "/proc/definitely/not/writable.csv";
  std::ostringstream out;
  EXPECT_ANY_THROW(run(cfg, out));
}
