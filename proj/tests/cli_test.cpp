// Copyright 2026 The PEG Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "peg/cli.hpp"
#include "peg/corpus_io.hpp"
#include "peg/evaluation.hpp"
#include "support/generators.hpp"

namespace peg {
namespace {

using nlohmann::json;
using testing_support::fixture;
namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "pegtool");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("peg-cli-") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string tmp(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(run({"validate", fixture("fig1.peg.json")}).code, 0);
  json bad = json::parse(read_file(fixture("fig1.peg.json")));
  bad["edges"].push_back({{"source", "n-T4"}, {"role", "ARG1"}, {"target", "n-T5"}});
  write_file(tmp("bad.peg.json"), bad.dump());
  const CliRun r = run({"--json", "validate", tmp("bad.peg.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["valid"], false);
  const CliRun missing = run({"--json", "validate", tmp("nope.json")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_TRUE(json::parse(missing.err).contains("error"));
}

TEST_F(CliTest, ScoreIdentityDecomposition) {
  const CliRun r = run({"--json", "score", "--gold", fixture("fig3.peg.json"), "--pred", fixture("fig3.peg.json"),
                     "--decompose", "--relations"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const auto& row : j["decomposition"]) EXPECT_DOUBLE_EQ(row["score"]["f1"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(j["relations"]["core"]["f1"].get<double>(), 1.0);
  const CliRun text = run({"score", "--gold", fixture("fig1.peg.json"), "--pred", fixture("fig1.peg.json")});
  EXPECT_NE(text.out.find("F1=1.0000"), std::string::npos);
}

TEST_F(CliTest, SimulateScriptThenValidate) {
  const std::string out = tmp("out.peg.json");
  const CliRun sim = run({"simulate", fixture("fig1.doc.json"), "--script", fixture("fig1.log"), "-o", out});
  ASSERT_EQ(sim.code, 0) << sim.err;
  EXPECT_EQ(run({"validate", out}).code, 0);
  EXPECT_DOUBLE_EQ(smatch(load_peg_file(fixture("fig1.peg.json")), load_peg_file(out)).score.f1, 1.0);
}

TEST_F(CliTest, SimulateRepl) {
  const std::string out = tmp("repl.peg.json");
  const CliRun r = run({"simulate", fixture("fig1.doc.json"), "-o", out},
                    read_file(fixture("fig1.log")) + "complete exec \nquit\n");
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_EQ(save_peg(load_peg_file(out)), save_peg(load_peg_file(fixture("fig1.peg.json"))));
  const CliRun partial = run({"simulate", fixture("fig1.doc.json"), "-o", tmp("p.json")},
                          "ground T4 mix\nexec T4\n");
  EXPECT_EQ(partial.code, 1);
  EXPECT_NE(partial.out.find("missing-argument"), std::string::npos);
}

TEST_F(CliTest, LowerStrictAndGolden) {
  const std::string prog = tmp("prog.json");
  EXPECT_EQ(run({"lower", fixture("fig1.peg.json"), "-o", prog}).code, 0);
  EXPECT_EQ(read_file(prog), read_file(fixture("fig1.program.json")));
  EXPECT_EQ(run({"lower", fixture("fig1.peg.json"), "-o", prog, "--strict"}).code, 1);
}

TEST_F(CliTest, StatsAndImport) {
  const CliRun s = run({"--json", "stats", PEG_FIXTURE_DIR});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["corpus"]["documents"], 2);
  const CliRun imp = run({"import-brat", fixture("brat"), "-o", tmp("imported")});
  ASSERT_EQ(imp.code, 0) << imp.err;
  const Document d = load_document_file(tmp("imported/fig1.doc.json"));
  EXPECT_EQ(d.mentions().size(), 7u);
}

TEST_F(CliTest, JsonOutputIsStable) {
  const std::vector<std::string> args = {"--json", "score", "--gold", fixture("fig1.peg.json"), "--pred",
                                         fixture("fig3.peg.json"), "--decompose"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run({"export-ontology"}).out, run({"export-ontology"}).out);
  EXPECT_EQ(run({"--json", "lint", fixture("fig3.peg.json")}).out,
            run({"--json", "lint", fixture("fig3.peg.json")}).out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"score", "--gold", "x"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace peg
