// Copyright 2026 The subcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed command-line tool end to end through the shell.

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include "testing/oracles.h"

namespace subcomp {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(fs::path const& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome run(testing::TempDir const& scratch, std::string const& args) {
  std::string const cmd = std::string("\"") + SUBCOMP_CLI_PATH + "\" " + args + " >\"" +
                          (scratch / "stdout").string() + "\" 2>\"" +
                          (scratch / "stderr").string() + "\"";
  int const raw = std::system(cmd.c_str());
  Outcome o;
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.out = slurp(scratch / "stdout");
  o.err = slurp(scratch / "stderr");
  return o;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir;
    auto const o = run(*dir_, "synth --out \"" + (*dir_ / "corpus").string() +
                                  "\" --words 150 --layers 2 --dim 16 --diverge-at 1");
    ASSERT_EQ(o.status, 0) << o.err;
  }
  static void TearDownTestSuite() { delete dir_; }
  static std::string corpus(std::string const& name) {
    return "\"" + (*dir_ / "corpus" / name).string() + "\"";
  }
  static std::string out_dir(std::string const& name) {
    return "\"" + (*dir_ / name).string() + "\"";
  }
  static testing::TempDir* dir_;
};

testing::TempDir* Cli::dir_ = nullptr;

TEST_F(Cli, GeometryWritesCsvAndPlots) {
  auto const o = run(*dir_, "geometry --config " + corpus("geometry.json") + " --out " +
                                out_dir("geometry_out"));
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_TRUE(fs::exists(*dir_ / "geometry_out" / "results.csv"));
  EXPECT_TRUE(fs::exists(*dir_ / "geometry_out" / "geometry__synthetic__isolated__all.svg"));
  EXPECT_TRUE(fs::exists(*dir_ / "geometry_out" / "geometry__synthetic__isolated__nonroot.svg"));
}

TEST_F(Cli, RepeatedRunsAreByteIdentical) {
  for (char const* name : {"p1", "p2"}) {
    auto const o = run(*dir_, "probe --config " + corpus("word_type.json") + " --out " +
                                  out_dir(name));
    ASSERT_EQ(o.status, 0) << o.err;
  }
  for (auto const& entry : fs::directory_iterator(*dir_ / "p1")) {
    auto const name = entry.path().filename();
    EXPECT_EQ(slurp(entry.path()), slurp(*dir_ / "p2" / name)) << name;
  }
}

TEST_F(Cli, CompareOverlaysBothSides) {
  auto const o = run(*dir_, "compare --config " + corpus("compare.json") + " --out " +
                                out_dir("compare_out"));
  ASSERT_EQ(o.status, 0) << o.err;
  auto const csv = slurp(*dir_ / "compare_out" / "results.csv");
  EXPECT_NE(csv.find("synthetic,geometry,add,isolated,"), std::string::npos);
  EXPECT_NE(csv.find("synthetic,geometry,add,contextual,"), std::string::npos);
}

TEST_F(Cli, ValidateStore) {
  auto const ok = run(*dir_, "validate-store " + corpus("store"));
  EXPECT_EQ(ok.status, 0) << ok.out;
  EXPECT_EQ(ok.out.rfind("PASS", 0), 0u);
  auto const bad = run(*dir_, "validate-store " + out_dir("nowhere"));
  EXPECT_NE(bad.status, 0);
}

TEST_F(Cli, BuildDatasetFromFiles) {
  auto const o = run(*dir_, "build-dataset --lexicon " + corpus("lexicon.tsv") +
                                " --vocab synthetic=" + corpus("vocab.txt") + " --seed 4 --out " +
                                out_dir("ds.json"));
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_NE(o.out.find("train"), std::string::npos);
  EXPECT_TRUE(fs::exists(*dir_ / "ds.json"));
}

TEST_F(Cli, FailuresExitNonzeroWithDiagnostic) {
  auto const mismatch = run(*dir_, "probe --config " + corpus("geometry.json") + " --out " +
                                       out_dir("x"));
  EXPECT_EQ(mismatch.status, 1);
  EXPECT_NE(mismatch.err.find("error: "), std::string::npos);

  std::ofstream(*dir_ / "broken.json") << R"({"models": [], "dataset": "none.json"})";
  auto const invalid = run(*dir_, "geometry --config " + out_dir("broken.json") + " --out " +
                                      out_dir("y"));
  EXPECT_EQ(invalid.status, 1);
  EXPECT_NE(invalid.err.find("at least one model"), std::string::npos);

  EXPECT_NE(run(*dir_, "geometry --config " + out_dir("missing.json") + " --out x").status, 0);
  EXPECT_NE(run(*dir_, "geometry").status, 0);
  EXPECT_NE(run(*dir_, "").status, 0);
}

}  // namespace
}  // namespace subcomp
