#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "latesched/bench.hpp"
#include "latesched/cli.hpp"
#include "latesched/instance_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace latesched {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "latesched");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("latesched_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    write_text_file(path, text);
    return path.string();
  }
  std::string write_instance(const std::string& name, const Instance& inst) {
    return write(name, instance_to_json(inst).dump(2));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveEddOnReferenceInstance) {
  const auto file = write_instance("a.json", testing::inst_a());
  const auto r = run({"solve", file, "--method", "edd"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["order"], nlohmann::json({1, 3, 2}));
  EXPECT_EQ(doc["objective"], 0.0);
  EXPECT_EQ(doc["finish"], 8.0);
  ASSERT_EQ(doc["per_job"].size(), 3u);
  EXPECT_EQ(doc["per_job"][0]["late"], false);
}

TEST_F(CliTest, SolveHeuristics) {
  const auto file = write_instance("a.json", testing::inst_a());
  auto r = run({"solve", file, "--method", "insertion", "--keep", "5", "--slots", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["objective"], 0.0);
  r = run({"solve", file, "--method", "selection", "--window", "2", "--out", path("s.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(read_text_file(path("s.json")))["order"],
            nlohmann::json({1, 2, 3}));
  r = run({"solve", file, "--method", "selection", "--window", "10"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_EQ(run({"solve", file, "--method", "selection", "--window", "10", "--force"}).code,
            kExitOk);
}

TEST_F(CliTest, OracleOnTwoJobInstance) {
  const auto file = write_instance("b.json", testing::inst_b());
  for (const char* flag : {"", "--brute"}) {
    std::vector<std::string> args{"oracle", file};
    if (*flag) args.emplace_back(flag);
    const auto r = run(args);
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["order"], nlohmann::json({2, 1}));
    EXPECT_EQ(doc["objective"], 0.0);
  }
}

TEST_F(CliTest, OrderUsesFileIndicesForUnsortedInput) {
  // Job 1 in the file arrives last; the loader sorts by arrival.
  const auto file = write("u.json", R"({"p": 10, "q": 5, "jobs": [{"arrival": 5, "processing": 1, "due": 6},
                                                 {"arrival": 0, "processing": 2, "due": 2}]})");
  const auto r = run({"solve", file, "--method", "fifo"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["order"], nlohmann::json({2, 1}));
}

TEST_F(CliTest, OracleGuard) {
  const auto file = write_instance("big.json", testing::random_instance(11, 3));
  EXPECT_EQ(run({"oracle", file, "--brute"}).code, kExitValidation);
  EXPECT_EQ(run({"oracle", file}).code, kExitOk);
}

TEST_F(CliTest, GenerateIsReproducible) {
  ASSERT_EQ(run({"generate", "--n", "6", "--count", "3", "--seed", "11", "--out", path("g1")}).code,
            kExitOk);
  ASSERT_EQ(run({"generate", "--n", "6", "--count", "3", "--seed", "11", "--out", path("g2")}).code,
            kExitOk);
  for (const char* name : {"instance_00000.json", "instance_00002.json", "manifest.json"}) {
    EXPECT_EQ(read_text_file(dir_ / "g1" / name), read_text_file(dir_ / "g2" / name)) << name;
  }
  const auto loaded = load_instance(dir_ / "g1" / "instance_00001.json");
  EXPECT_EQ(loaded.instance.size(), 6u);

  ::setenv("LATESCHED_SEED", "11", 1);
  const auto r = run({"generate", "--n", "6", "--count", "3", "--out", path("g3")});
  ::unsetenv("LATESCHED_SEED");
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(read_text_file(dir_ / "g1" / "instance_00002.json"),
            read_text_file(dir_ / "g3" / "instance_00002.json"));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"solve", "x.json"}).code, kExitUsage);  // --method missing
  EXPECT_EQ(run({"solve", "x.json", "--method", "magic"}).code, kExitUsage);
  EXPECT_EQ(run({"generate", "--n", "0", "--out", path("z")}).code, kExitUsage);

  EXPECT_EQ(run({"solve", path("missing.json"), "--method", "edd"}).code, kExitValidation);
  const auto bad = write("bad.json", R"({"p": 10, "q": 5, "jobs": [{"arrival": 0, "processing": -1, "due": 3}]})");
  auto r = run({"solve", bad, "--method", "edd"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("nonpositive processing"), std::string::npos);
  const auto no_q = write("no_q.json", R"({"p": 10, "jobs": [{"arrival": 0, "processing": 1, "due": 3}]})");
  EXPECT_EQ(run({"solve", no_q, "--method", "edd"}).code, kExitValidation);
  const auto garbage = write("garbage.json", "{not json");
  EXPECT_EQ(run({"oracle", garbage}).code, kExitValidation);
  EXPECT_EQ(run({"generate", "--mean-margin", "-1", "--out", path("z")}).code, kExitValidation);
}

TEST_F(CliTest, HelpForEveryCommand) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("p = 10"), std::string::npos);
  for (const char* cmd : {"generate", "solve", "oracle", "export-milp", "bench", "summarize"}) {
    r = run({cmd, "--help"});
    EXPECT_EQ(r.code, kExitOk) << cmd;
    EXPECT_FALSE(r.out.empty()) << cmd;
  }
  r = run({"solve", "--help"});
  EXPECT_NE(r.out.find("--window"), std::string::npos);
  EXPECT_NE(r.out.find("5"), std::string::npos);
  r = run({"generate", "--help"});
  EXPECT_NE(r.out.find("LATESCHED_SEED"), std::string::npos);
}

TEST_F(CliTest, ExportMilp) {
  const auto file = write_instance("a.json", testing::inst_a());
  auto r = run({"export-milp", file});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Minimize"), std::string::npos);
  EXPECT_NE(r.out.find("C_big: 10"), std::string::npos);
  r = run({"export-milp", file, "--big-m", "50", "--out", path("m.lp")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(read_text_file(path("m.lp")).find("C_big: 50"), std::string::npos);
  EXPECT_EQ(run({"export-milp", file, "--big-m", "3"}).code, kExitValidation);
}

TEST_F(CliTest, BenchAndSummarize) {
  ASSERT_EQ(run({"generate", "--n", "5", "--count", "4", "--seed", "2", "--out", path("set")}).code,
            kExitOk);
  const auto methods = write("methods.json", R"([
      {"method": "edd"},
      {"label": "ins", "method": "insertion", "keep": 3, "slots": 2},
      {"label": "opt", "method": "bnb"}])");
  auto r = run({"bench", "--instances", path("set"), "--methods", methods, "--out",
                path("rec.csv"), "--jobs", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto records = records_from_csv(read_text_file(path("rec.csv")));
  ASSERT_EQ(records.size(), 12u);
  EXPECT_EQ(records[0].instance_id, "instance_00000");
  EXPECT_TRUE(fs::exists(path("rec.csv.meta.json")));

  r = run({"summarize", path("rec.csv"), "--out", path("sum.csv"), "--ecdf", "opt", "--ecdf-out",
           path("ecdf.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto summary = read_text_file(path("sum.csv"));
  EXPECT_NE(summary.find("\nopt,0,0,0,0,1,"), std::string::npos);
  EXPECT_EQ(read_text_file(path("ecdf.csv")).substr(0, 19), "objective,fraction\n");
  EXPECT_TRUE(fs::exists(path("sum.csv.meta.json")));

  EXPECT_EQ(run({"summarize", path("rec.csv"), "--ecdf", "nope"}).code, kExitValidation);
  const auto bad_methods = write("bad_methods.json", R"([{"method": "tabu"}])");
  EXPECT_EQ(run({"bench", "--instances", path("set"), "--methods", bad_methods}).code,
            kExitValidation);
  EXPECT_EQ(run({"bench", "--instances", path("nowhere"), "--methods", methods}).code,
            kExitValidation);
}

}  // namespace
}  // namespace latesched
