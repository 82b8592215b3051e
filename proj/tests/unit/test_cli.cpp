#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "brownloop");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = brownloop::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("brownloop_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(CliTest, StructureA2) {
  const Result r = run({"--model", "a2", "--out-dir", dir.string(), "structure"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("l=2 n=5 nu=8"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir / "report.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.jsonl"));
}

TEST_F(CliTest, HelpExitsZero) {
  const Result r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mcloop"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--out-dir", dir.string(), "kernel", "--bogus", "1"}).code, 2);
}

TEST_F(CliTest, DomainErrorsExitOne) {
  const Result r = run({"--out-dir", dir.string(), "kernel", "--t", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("t must be positive"), std::string::npos) << r.err;
  EXPECT_EQ(run({"--model", "a2", "--out-dir", dir.string(), "kernel"}).code, 1);
  EXPECT_EQ(run({"--out-dir", dir.string(), "mcloop", "--paths", "0"}).code, 1);
}

TEST_F(CliTest, ReportsAreByteIdentical) {
  const fs::path a = dir / "a", b = dir / "b";
  const std::vector<std::string> tail{"kernel", "--t", "1,3", "--r-count", "11"};
  std::vector<std::string> ra{"--model", "h2", "--out-dir", a.string()}, rb{"--model", "h2", "--out-dir", b.string()};
  ra.insert(ra.end(), tail.begin(), tail.end());
  rb.insert(rb.end(), tail.begin(), tail.end());
  ASSERT_EQ(run(ra).code, 0);
  ASSERT_EQ(run(rb).code, 0);
  const std::string csv = slurp(a / "report.csv");
  EXPECT_EQ(csv, slurp(b / "report.csv"));
  EXPECT_EQ(csv.rfind("t,r,h_t,envelope_lo,envelope_hi,phi0\r\n", 0), 0u);
}

TEST_F(CliTest, McloopSampleDeterministic) {
  const fs::path a = dir / "a", b = dir / "b";
  ASSERT_EQ(run({"--out-dir", a.string(), "mcloop", "--paths", "1000", "--dt", "0.01"}).code, 0);
  ASSERT_EQ(run({"--workers", "2", "--out-dir", b.string(), "mcloop", "--paths", "1000", "--dt", "0.01"}).code, 0);
  EXPECT_EQ(slurp(a / "sample.csv"), slurp(b / "sample.csv"));
}

TEST_F(CliTest, ConfigFileAndPrecedence) {
  const fs::path cfg = dir / "run.ini";
  std::ofstream(cfg) << "model = a2\n";
  Result r = run({"--config", cfg.string(), "--out-dir", dir.string(), "structure"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("n=5"), std::string::npos);
  r = run({"--config", cfg.string(), "--model", "h3", "--out-dir", dir.string(), "structure"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("l=1 n=3 nu=3"), std::string::npos) << r.out;
}

TEST_F(CliTest, SummaryAppends) {
  ASSERT_EQ(run({"--out-dir", dir.string(), "structure"}).code, 0);
  ASSERT_EQ(run({"--out-dir", dir.string(), "structure", "--t", "10"}).code, 0);
  const std::string s = slurp(dir / "summary.jsonl");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
  EXPECT_NE(s.find("\"command\":\"structure\""), std::string::npos);
}
