#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "poq/evaluator.hpp"
#include "poq/ingest.hpp"
#include "poq/parser.hpp"
#include "poq/service.hpp"
#include "support.hpp"
#include "table2.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = poq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string table1() { return poq::test::fixture("table1.csv").string(); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("poq_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
          "_" + name);
}

}  // namespace

TEST(Cli, QueryTable) {
  const auto r = run({"query", table1(), poq::test::kFig2Query});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1/2 traces matched"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1/2 variants matched"), std::string::npos);
  EXPECT_NE(r.out.find("CRR DC RIP RIT DC"), std::string::npos) << r.out;
}

TEST(Cli, QueryFromFileAndModes) {
  const auto path = temp_file("q.txt");
  std::ofstream(path) << poq::test::kFig2Query << "\n";
  const auto r = run({"query", table1(), "--query-file", path.string(),
                      "--mode", "full"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mode full, 4 leaves, median 4"), std::string::npos)
      << r.out;
  EXPECT_EQ(run({"query", table1()}).code, 1);
  EXPECT_EQ(run({"query", table1(), "'A' isC", "--mode", "lazy"}).code, 1);
}

TEST(Cli, MalformedQueryExitsTwoWithCaret) {
  const auto r = run({"query", table1(), "'A' isQ 'B'"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
  EXPECT_NE(r.err.find("  'A' isQ 'B'\n      ^^^\n"), std::string::npos) << r.err;
}

TEST(Cli, CaretDiagnosticOnSecondLine) {
  const std::string text = "'A' isC\nAND 'B' isX 'C'";
  const std::string d = poq::cli::caret_diagnostic(text, 16, "unknown operator");
  EXPECT_NE(d.find("error: unknown operator"), std::string::npos);
  EXPECT_NE(d.find("  AND 'B' isX 'C'\n          ^^^\n"), std::string::npos) << d;
}

TEST(Cli, DataErrorsExitThree) {
  EXPECT_EQ(run({"query", "/nonexistent/log.csv", "'A' isC"}).code, 3);
  const auto path = temp_file("bad.csv");
  std::ofstream(path) << "case,activity,complete\nc,A,not-a-time\n";
  const auto r = run({"variants", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, JsonMatchesServiceBody) {
  const auto r = run({"query", table1(), poq::test::kFig2Query, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  poq::Service service;
  const auto up = service.upload(poq::test::read_fixture("table1.csv"), "csv",
                                 "table1.csv");
  const auto http = service.query(up.body["log_id"],
                                  json{{"text", poq::test::kFig2Query}}.dump());
  json a = json::parse(r.out);
  json b = http.body;
  a["metrics"]["wall_time_ms"] = 0;
  b["metrics"]["wall_time_ms"] = 0;
  EXPECT_EQ((poq::ApiResponse{200, a}.dump()), (poq::ApiResponse{200, b}.dump()));
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(Cli, DesugarFlagAndCommand) {
  auto r = run({"desugar", "ALL{'A','B'} isE"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(poq::parse(r.out.substr(0, r.out.size() - 1)),
            poq::parse("('A' isE >= 1) AND ('B' isE >= 1)"));
  r = run({"query", table1(), "ANY{'DC','CRR'} isS", "--desugar"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("desugared: "), std::string::npos);
  EXPECT_NE(r.out.find("2/2 traces matched"), std::string::npos) << r.out;
  EXPECT_EQ(run({"desugar", "'A' isC AND"}).code, 2);
}

TEST(Cli, Variants) {
  auto r = run({"variants", table1()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("2 traces, 2 variants"), std::string::npos);
  r = run({"variants", poq::test::fixture("pairing.xes.gz").string(), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["trace_count"], 2);
}

TEST(Cli, CustomColumns) {
  const auto path = temp_file("cols.csv");
  std::ofstream(path)
      << "trace,task,ts\nx,A,2021-06-01T00:00:00Z\nx,B,2021-06-01T00:00:05Z\n";
  const auto r = run({"query", path.string(), "'A' isDF 'B'", "--case-col",
                      "trace", "--activity-col", "task", "--complete-col", "ts"});
  std::filesystem::remove(path);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1/1 traces matched"), std::string::npos) << r.out;
}

TEST(Cli, BenchSynthetic) {
  const auto csv = temp_file("bench.csv");
  const auto r = run({"bench", "--synthetic", "60", "--n", "8", "--reps", "1",
                      "--out", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json summary = json::parse(r.out);
  EXPECT_EQ(summary["queries"], 8);
  EXPECT_EQ(summary["log"]["traces"], 60);
  std::ifstream in(csv);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  std::filesystem::remove(csv);
  EXPECT_EQ(lines, 9u);

  const auto d1 = run({"bench", "--synthetic", "60", "--n", "8", "--reps", "1",
                       "--deterministic"});
  const auto d2 = run({"bench", "--synthetic", "60", "--n", "8", "--reps", "1",
                       "--deterministic"});
  ASSERT_EQ(d1.code, 0) << d1.err;
  EXPECT_EQ(d1.out, d2.out);
  EXPECT_EQ(run({"bench", "--n", "3"}).code, 1);
  EXPECT_EQ(run({"bench", "--synthetic", "10", "--reps", "0"}).code, 1);
}

TEST(Cli, ServeRejectsBadPort) {
  EXPECT_EQ(run({"serve", "--port", "99999"}).code, 1);
  EXPECT_EQ(run({"serve", "--port", "-1"}).code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}
