#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "iotrace/model/session_codec.hpp"
#include "paths.hpp"
#include "process.hpp"
#include "report.hpp"

namespace ts = iotrace::testing;
namespace cli = iotrace::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = ts::scratch_dir("cli"); }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  const auto unknown = run({"discover", "--binary", IOTRACE_FIXTURE_DRIVER, "--bogus"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_NE(unknown.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"discover"}).code, 1);
  EXPECT_EQ(run({"discover", "--binary", (dir_ / "missing").string()}).code, 1);
  const auto both = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "gcd",
                         "--functions", IOTRACE_FIXTURE_DRIVER, "-o", (dir_ / "t").string()});
  EXPECT_EQ(both.code, 1);
  const auto none = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "-o", (dir_ / "t").string()});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "gcd", "--max-depth",
                 "0", "-o", (dir_ / "t").string()})
                .code,
            1);
  EXPECT_EQ(run({"select", IOTRACE_FIXTURE_DRIVER, "--strategy", "best"}).code, 2);
}

TEST_F(Cli, HelpAndVersion) {
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  for (const char* sub : {"discover", "trace", "select", "doc", "export", "report", "all"}) {
    EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
  }
  EXPECT_EQ(run({"--version"}).code, 0);
}

TEST_F(Cli, DiscoverStrippedBinaryIsRuntimeError) {
  if (std::string(IOTRACE_TRACEE_STRIPPED).empty()) GTEST_SKIP() << "strip unavailable";
  const auto r = run({"discover", "--binary", IOTRACE_TRACEE_STRIPPED});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("debuginfo: NoDebugInfo"), std::string::npos) << r.err;
}

TEST_F(Cli, DiscoverListsSourceFunctions) {
  const auto all = run({"discover", "--binary", IOTRACE_FIXTURE_DRIVER});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_NE(all.out.find("main\n"), std::string::npos);
  const auto lib = run({"discover", "--binary", IOTRACE_FIXTURE_DRIVER, "--src",
                        IOTRACE_FIXTURE_SRC_DIR});
  ASSERT_EQ(lib.code, 0) << lib.err;
  EXPECT_EQ(lines(lib.out), 12u);
  EXPECT_EQ(lib.out.find("main\n"), std::string::npos);
  const auto glob = run({"discover", "--binary", IOTRACE_FIXTURE_DRIVER, "--filter", "*_name",
                         "-o", (dir_ / "f.txt").string()});
  ASSERT_EQ(glob.code, 0);
  EXPECT_EQ(ts::read_text(dir_ / "f.txt"), "color_name\n");
}

TEST_F(Cli, DiscoverQualifiesAmbiguousStatics) {
  const auto r = run({"discover", "--binary", IOTRACE_TRACEE_TWO_FILE, "--filter", "helper"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "two_a.c:helper\ntwo_b.c:helper\n");
}

TEST_F(Cli, TraceSelectExport) {
  const auto trace = dir_ / "t.iotrace.jsonl";
  const auto t = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "gcd", "-o",
                      trace.string(), "--", "thrice"});
  ASSERT_EQ(t.code, 0) << t.err;
  std::ifstream in(trace);
  const auto session = iotrace::model::decode_session(in);
  EXPECT_EQ(session.records.at("gcd").size(), 3u);
  EXPECT_EQ(session.argv.back(), "thrice");

  const auto seeded = run({"select", trace.string(), "--seed", "9"});
  ASSERT_EQ(seeded.code, 0);
  EXPECT_EQ(seeded.err, "");
  EXPECT_EQ(run({"select", trace.string(), "--seed", "9"}).out, seeded.out);
  const auto unseeded = run({"select", trace.string()});
  EXPECT_NE(unseeded.err.find("select: using seed "), std::string::npos);
  const auto first = run({"select", trace.string(), "--strategy", "first"});
  const auto examples = iotrace::model::decode_examples(first.out);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].record.call_id, 1u);

  const auto viewer = dir_ / "gcd.viewer.json";
  EXPECT_EQ(run({"export", trace.string(), "--function", "gcd", "-o", viewer.string()}).code, 0);
  EXPECT_NE(ts::read_text(viewer).find("\"viewer_version\": 1"), std::string::npos);
  const auto missing = run({"export", trace.string(), "--function", "lcm", "-o", viewer.string()});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("aggregator: EmptyInput"), std::string::npos);
}

TEST_F(Cli, DiscardOnFailureExitsThree) {
  const auto trace = dir_ / "t.iotrace.jsonl";
  const auto r = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "gcd",
                      "--discard-on-failure", "-o", trace.string(), "--", "fail"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("exit 1"), std::string::npos) << r.err;
  std::ifstream in(trace);
  EXPECT_EQ(iotrace::model::decode_session(in).record_count(), 0u);

  const auto kept = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "gcd", "-o",
                         trace.string(), "--", "fail"});
  EXPECT_EQ(kept.code, 0);
  EXPECT_NE(kept.err.find("warning"), std::string::npos);
}

TEST_F(Cli, RuntimeErrorsArePrefixedByModule) {
  const auto bad = dir_ / "bad.jsonl";
  std::ofstream(bad) << "not json\n";
  const auto r = run({"select", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.err.rfind("model: ", 0), 0u) << r.err;
  const auto unknown = run({"trace", "--binary", IOTRACE_TRACEE_SIMPLE, "--function", "nosuch",
                            "-o", (dir_ / "t").string()});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_EQ(unknown.err.rfind("tracer: ", 0), 0u) << unknown.err;
}

TEST_F(Cli, VariadicFunctionsWarn) {
  const auto r = run({"trace", "--binary", IOTRACE_TRACEE_LAYOUT, "--function", "sum_ints",
                      "--function", "add", "-o", (dir_ / "t").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.err, "tracer: warning: sum_ints is variadic; only named parameters are recorded\n");
}

TEST_F(Cli, ReportWithoutExamples) {
  const auto r = run({"report", "--binary", IOTRACE_FIXTURE_DRIVER, "--src",
                      IOTRACE_FIXTURE_SRC_DIR});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("summary: 12 / 8 / 0\n"), std::string::npos) << r.out;
}

TEST(Report, FormatsThreeColumns) {
  const auto text = cli::format_report({{"ffmpeg", 20347, 625, 191}, {"libssh", 1, 1, 0}});
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find("source"), std::string::npos);
  EXPECT_NE(header.find("documented"), std::string::npos);
  EXPECT_NE(header.find("with-examples"), std::string::npos);
  std::string name;
  std::size_t a = 0, b = 0, c = 0;
  in >> name >> a >> b >> c;
  EXPECT_EQ(name, "ffmpeg");
  EXPECT_EQ(a, 20347u);
  EXPECT_EQ(b, 625u);
  EXPECT_EQ(c, 191u);
  EXPECT_NE(text.find("summary: 20347 / 625 / 191\n"), std::string::npos);
}

TEST(Report, CoverageCountsOnlyDocumentedSourceFunctions) {
  iotrace::docgen::DocComment d;
  std::map<std::string, iotrace::docgen::DocComment> docs = {{"a", d}, {"b", d}, {"ghost", d}};
  std::vector<iotrace::model::IOExample> examples(3);
  examples[0].function = "a";
  examples[1].function = "file.c:b";
  examples[2].function = "c";
  const auto cov = cli::coverage("lib", {"a", "b", "c", "d"}, docs, examples);
  EXPECT_EQ(cov.source, 4u);
  EXPECT_EQ(cov.documented, 2u);
  EXPECT_EQ(cov.with_examples, 2u);
}
