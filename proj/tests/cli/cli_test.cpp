// Copyright 2026 The Cayley Automata Authors
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

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "cayley/fsa/conv.hpp"
#include "cayley/sd/group.hpp"

namespace fs = std::filesystem;
using namespace cayley;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CAYLEY_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// The value after "key\t" on its own line.
std::string field(const std::string& out, const std::string& key) {
  const auto pos = out.find(key + "\t");
  if (pos == std::string::npos) return "";
  const auto start = pos + key.size() + 1;
  return out.substr(start, out.find('\n', start) - start);
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = fs::temp_directory_path() / ("cayley_cli_test_" + std::to_string(getpid()));
    fs::remove_all(root_);
    fs::create_directories(root_);
    std::ofstream(root_ / "uni.json") << R"({"d": 2, "n": 1, "matrices": [[1, 1, 0, 1]], "name": "unipotent"})";
    std::ofstream(root_ / "z2.json") << R"({"relators": ["abAB"]})";
    std::ofstream(root_ / "bad.json") << R"({"d": 2, "n": 1, "matrices": [[1, 1, 1, 1]]})";
    std::ofstream(root_ / "broken.json") << "{ not json";
    ASSERT_EQ(run("build " + p("uni.json") + " -o " + p("uni")).code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(root_); }
  static std::string p(const std::string& name) { return (root_ / name).string(); }

  static fs::path root_;
};

fs::path Cli::root_;

}  // namespace

TEST_F(Cli, BuildThenVerifyRadius5) {
  auto r = run("verify " + p("uni") + " --radius 5 --random 2000");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, WordProblemMatchesOracle) {
  const auto spec = sd::unipotent_spec();
  for (const std::string w : {"f e1 F E1", "f f e2 F E1 E1", "1", "E2 F F e1"}) {
    auto r = run("wp " + p("uni") + " '" + w + "'");
    ASSERT_EQ(r.code, 0) << w;
    const auto expect = sd::encode(sd::evaluate(sd::parse_group_word(w, spec), spec), spec);
    const auto printed = field(r.out, "encoding");
    EXPECT_EQ(printed, fsa::format_word(sd::element_alphabet(spec), expect)) << w;
    // The printed encoding decodes to the printed normal form.
    const auto g = sd::decode(fsa::parse_word(sd::element_alphabet(spec), printed), spec);
    EXPECT_EQ(sd::format_element(g, spec), field(r.out, "element"));
  }
  EXPECT_EQ(field(run("wp " + p("uni") + " 'f e1 F E1'").out, "element"), "(1, (0,-1))");
}

TEST_F(Cli, MulInvAndJson) {
  auto r = run("--json mul " + p("uni") + " 'f e1' F");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_EQ(j["element"]["vector"], nlohmann::json({"1", "-1"}));
  r = run("inv " + p("uni") + " 'f e1'");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "element"), "(F, (-1,1))");
}

TEST_F(Cli, Orbit) {
  auto r = run("orbit " + p("uni.json") + " -u 1,0 -v 1,3 --depth 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "witness"), "fff");
  r = run("orbit " + p("uni.json") + " -u 1,0 -v 1,3 --depth 3 --conjugacy");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(field(r.out, "conjugator"), "(fff, (0,0))");
  r = run("orbit " + p("uni.json") + " -u 0,0 -v 1,0 --depth 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("none"), std::string::npos);
  EXPECT_EQ(run("orbit " + p("uni.json") + " -u 1,0,0 -v 1,3 --depth 3").code, 2);
}

TEST_F(Cli, ReduceAndBuildEmittedSpec) {
  auto r = run("--json reduce " + p("z2.json") + " -w abAB -o " + p("z2out"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["spec"]["d"], 6);
  EXPECT_EQ(j["spec"]["n"], 3);
  EXPECT_FALSE(j["membership_witness"].is_null());
  EXPECT_TRUE(j["instance"].is_null());
  EXPECT_TRUE(fs::exists(p("z2out/spec.json")));
  EXPECT_EQ(run("build " + p("z2out/spec.json") + " -o " + p("z2struct")).code, 0);
  EXPECT_EQ(run("wp " + p("z2struct") + " 'f1 e5 F1 f2 E6'").code, 0);
}

TEST_F(Cli, ProbeAndDot) {
  auto r = run("probe " + p("uni") + " -s e1 --radii 1..3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("# a plateau is evidence, never proof, of regularity", 0), 0u);
  r = run("export-dot " + p("uni"));
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(p("uni/domain.0.dot")));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("verify").code, 64);
  EXPECT_EQ(run("verify " + p("uni") + " --bogus").code, 64);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("wp " + p("uni") + " g1").code, 2);
  EXPECT_EQ(run("build " + p("missing.json") + " -o " + p("x")).code, 2);
  EXPECT_EQ(run("build " + p("bad.json") + " -o " + p("x")).code, 2);
  EXPECT_EQ(run("build " + p("broken.json") + " -o " + p("x")).code, 2);
  EXPECT_EQ(run("verify " + p("nowhere")).code, 2);
  EXPECT_EQ(run("probe " + p("uni") + " -s e1 --radii 3..1").code, 2);
}

TEST_F(Cli, TamperedStructureFailsVerification) {
  fs::copy(p("uni"), p("tampered"), fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  fs::copy_file(p("tampered/right3_E1.1.fsa"), p("tampered/right2_e1.1.fsa"), fs::copy_options::overwrite_existing);
  auto r = run("verify " + p("tampered") + " --radius 2 --random 200");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_EQ(run("wp " + p("tampered") + " 'f e1'").code, 1);
}
