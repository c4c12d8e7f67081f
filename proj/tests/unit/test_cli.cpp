#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "psc/acceptance.hpp"
#include "psc/cli.hpp"
#include "psc/serialize.hpp"

using psc::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  std::vector<Json> records() const {
    std::vector<Json> v;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) v.push_back(Json::parse(line));
    return v;
  }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = psc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, FloorRecordShape) {
  const auto r = run({"floor", "-n", "97", "-c", "6/5", "--no-timing"});
  ASSERT_EQ(r.code, psc::cli::kSuccess) << r.err;
  const auto recs = r.records();
  ASSERT_EQ(recs.size(), 1u);
  const auto& j = recs[0];
  EXPECT_EQ(j["command"], "floor");
  EXPECT_EQ(j["elapsed_ms"], 0);
  EXPECT_EQ(j["tool_version"], psc::version());
  EXPECT_TRUE(j.contains("params"));
  EXPECT_NE(j["result"].dump().find("242"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"floor", "-n", "97", "-c", "2"}).code, psc::cli::kUsage);
  EXPECT_EQ(run({"floor", "-n", "97"}).code, psc::cli::kUsage);
  EXPECT_EQ(run({"nonsense"}).code, psc::cli::kUsage);
  EXPECT_EQ(run({}).code, psc::cli::kUsage);
  EXPECT_EQ(run({"census", "-x", "1e12", "-c", "3/2", "-R", "2"}).code, psc::cli::kResourceCap);
  EXPECT_EQ(run({"--help"}).code, psc::cli::kSuccess);
  EXPECT_EQ(run({"constants", "--help"}).code, psc::cli::kSuccess);
}

TEST(Cli, ConstantsDelta) {
  const auto r = run({"constants", "delta", "-R", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("0.044560"), std::string::npos);
}

TEST(Cli, CsvOutput) {
  const auto r = run({"--format", "csv", "--no-timing", "census", "-x", "1e4", "-c", "3/2", "-R", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto eol = r.out.find("\r\n");
  ASSERT_NE(eol, std::string::npos);
  const std::string header = r.out.substr(0, eol);
  EXPECT_EQ(header, "x,c,R,count,pi_x,eta_hat");
  EXPECT_NE(header.find("count"), std::string::npos);
  EXPECT_NE(r.out.find("317"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
  const auto path = std::filesystem::temp_directory_path() / "psc_cli_test.conf";
  {
    std::ofstream f(path);
    f << "# census settings\nx = 10000\nc = 3/2\nR = 1\nno-timing = true\n";
  }
  const auto a = run({"--config", path.string(), "census"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.records()[0]["result"]["count"], 82);
  const auto b = run({"--config", path.string(), "census", "-R", "2"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.records()[0]["result"]["count"], 317);
  std::filesystem::remove(path);
}

TEST(Cli, OutputIndependentOfJobs) {
  for (const char* sub : {"squarefree", "psprimes"}) {
    const auto a = run({"--jobs", "1", "--no-timing", sub, "-x", "200000", "-c", "1.0521"});
    const auto b = run({"--jobs", "4", "--no-timing", sub, "-x", "200000", "-c", "1.0521"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, VerifyCriterionIsDeterministic) {
  const std::string fx = PSC_FIXTURE_DIR;
  const auto a = run({"--jobs", "1", "--no-timing", "verify", "--criterion", "12", "--fixtures", fx});
  const auto b = run({"--jobs", "4", "--no-timing", "verify", "--criterion", "12", "--fixtures", fx});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(Fixtures, RecordedValuesReproduce) {
  const auto check = psc::verify::check_fixtures(PSC_FIXTURE_DIR);
  EXPECT_TRUE(check.present);
  EXPECT_EQ(check.checked, psc::verify::fixture_cases().size());
  for (const auto& m : check.mismatches) ADD_FAILURE() << m.command << ": " << m.reason;
}
