// Copyright 2026 The GenPerm Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "genperm_cli/cli.hpp"

namespace genperm::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
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
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::path(::testing::TempDir()) / (std::string("genperm_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("GENPERM_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void generate(const std::string& kind, const std::string& sizes, const std::string& stem) {
    std::vector<std::string> args = {"generate", "--kind", kind, "--graph-out",
                                     path(stem + ".edges"), "--cover-out", path(stem + ".cmty"),
                                     "--seed", "3"};
    if (!sizes.empty()) {
      args.push_back(kind == "planted" ? "--blocks" : "--sizes");
      args.push_back(sizes);
    }
    const Result r = call(args);
    ASSERT_EQ(r.code, 0) << r.err;
  }

  fs::path dir_;
};

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"bogus"}).code, kExitUsage);
  EXPECT_EQ(call({"score", "--graph", "x"}).code, kExitUsage);
  const Result r = call({"detect", "--graph", "x", "--order", "sideways"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.err.rfind("error: argument: ", 0), 0u);
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
  EXPECT_EQ(call({"--help"}).code, kExitOk);
  EXPECT_EQ(call({"detect", "--help"}).code, kExitOk);
}

TEST_F(CliTest, DataErrorsExitOne) {
  const Result missing = call({"score", "--graph", path("none"), "--cover", path("none")});
  EXPECT_EQ(missing.code, kExitData);
  EXPECT_EQ(missing.err.rfind("error: data: ", 0), 0u);
  generate("bridge-pair", "4,4", "g");
  generate("path", "3,3,3", "h");
  // The 9-node cover names nodes the 8-node graph lacks.
  EXPECT_EQ(call({"score", "--graph", path("g.edges"), "--cover", path("h.cmty")}).code,
            kExitData);
}

TEST_F(CliTest, ScoreReportsEveryMetric) {
  generate("ring", "3,4", "ring");
  const Result r = call({"score", "--graph", path("ring.edges"), "--cover", path("ring.cmty"),
                         "--per-vertex", path("pv.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"genperm", "eq", "qov", "cc", "oc", "per_vertex_path"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_DOUBLE_EQ(j["genperm"].get<double>(), 0.72);
  // Bridge singletons are not covered by a nontrivial community.
  EXPECT_DOUBLE_EQ(j["cc"].get<double>(), 12.0 / 15.0);
  const std::string table = slurp(path("pv.csv"));
  EXPECT_EQ(table.rfind("v,c,genperm\n", 0), 0u);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 16);
  EXPECT_TRUE(fs::exists(path("pv.csv.manifest.json")));
}

TEST_F(CliTest, ValidateIdenticalIsOne) {
  generate("ring", "5,5", "ring");
  const Result r =
      call({"validate", "--truth", path("ring.cmty"), "--detected", path("ring.cmty")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["onmi"].get<double>(), 1.0);
  EXPECT_EQ(j["omega"].get<double>(), 1.0);
  EXPECT_EQ(j["fscore"].get<double>(), 1.0);
}

TEST_F(CliTest, DetectRecoversRingAndWritesReport) {
  generate("ring", "5,5", "ring");
  const Result r = call({"detect", "--graph", path("ring.edges"), "--max-iter", "15", "--out",
                         path("found.cmty")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("found.cmty")), slurp(path("ring.cmty")));
  const auto report = nlohmann::json::parse(slurp(path("found.cmty.report.json")));
  EXPECT_TRUE(report["converged"].get<bool>());
  EXPECT_LT(report["iterations"].get<int>(), 15);
  EXPECT_EQ(report["objective_history"].size(), report["iterations"].get<std::size_t>());
  const auto manifest = nlohmann::json::parse(slurp(path("found.cmty.manifest.json")));
  EXPECT_EQ(manifest["subcommand"], "detect");
  EXPECT_EQ(manifest["inputs"]["graph"], path("ring.edges"));
  EXPECT_EQ(manifest["outputs"].size(), 2u);
  EXPECT_TRUE(manifest.contains("wall_time_seconds"));
  EXPECT_TRUE(manifest.contains("version"));
}

TEST_F(CliTest, DetectDisconnectedNeedsFlag) {
  {
    std::ofstream f(path("two.edges"));
    f << "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";
  }
  EXPECT_EQ(call({"detect", "--graph", path("two.edges")}).code, kExitData);
  const Result r = call({"detect", "--graph", path("two.edges"), "--per-component"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0 1 2\n3 4 5\n");
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  generate("planted", "12,12,12", "pl");
  const std::vector<std::string> base = {"perturb", "--graph", path("pl.edges"), "--truth",
                                         path("pl.cmty"), "--trials", "3", "--p-grid", "0.2"};
  auto with_seed = base;
  with_seed.insert(with_seed.end(), {"--seed", "77"});
  const Result explicit_seed = call(with_seed);
  setenv("GENPERM_SEED", "77", 1);
  const Result env_seed = call(base);
  EXPECT_EQ(env_seed.out, explicit_seed.out);
  setenv("GENPERM_SEED", "seven", 1);
  EXPECT_EQ(call(base).code, kExitUsage);
  unsetenv("GENPERM_SEED");
}

TEST_F(CliTest, OneIndexedRoundTrip) {
  {
    std::ofstream f(path("g1.edges"));
    f << "1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n4 6\n";
  }
  const Result r = call({"detect", "--graph", path("g1.edges"), "--one-indexed"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1 2 3\n4 5 6\n");
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  generate("planted", "12,12,12", "pl");
  const std::vector<std::string> base = {"perturb", "--graph", path("pl.edges"), "--truth",
                                         path("pl.cmty"), "--trials", "6", "--seed", "5"};
  auto parallel = base;
  parallel.insert(parallel.end(), {"--jobs", "4"});
  const Result a = call(base);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, call(parallel).out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "strategy,p,metric,mean,normalized");
}

TEST_F(CliTest, PerturbSingleCover) {
  generate("bridge-pair", "4,4", "g");
  const Result bad = call({"perturb", "--graph", path("g.edges"), "--truth", path("g.cmty"),
                           "--cover-out", path("p.cmty")});
  EXPECT_EQ(bad.code, kExitUsage);
  const Result r = call({"perturb", "--graph", path("g.edges"), "--truth", path("g.cmty"),
                         "--cover-out", path("p.cmty"), "--strategies", "edge", "--p-grid",
                         "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(path("p.cmty")), "0 5 6 7\n1 2 3 4\n");
}

// Every subcommand run twice with the same seed produces identical bytes
// on stdout and in every output file other than the manifest.
TEST_F(CliTest, EverySubcommandIsByteReproducible) {
  generate("planted", "15,15,15", "pl");
  {
    std::ofstream f(path("cands.txt"));
    f << "truth pl.cmty\nfound found.cmty\nperturbed pert.cmty\n";
  }
  ASSERT_EQ(call({"detect", "--graph", path("pl.edges"), "--per-component", "--out",
                  path("found.cmty")})
                .code,
            0);
  ASSERT_EQ(call({"perturb", "--graph", path("pl.edges"), "--truth", path("pl.cmty"),
                  "--strategies", "random", "--p-grid", "0.3", "--cover-out", path("pert.cmty")})
                .code,
            0);
  const std::string g = path("pl.edges");
  const std::string t = path("pl.cmty");
  const std::vector<std::vector<std::string>> commands = {
      {"generate", "--kind", "planted", "--blocks", "10,10", "--graph-out", path("o.edges"),
       "--cover-out", path("o.cmty")},
      {"detect", "--graph", g, "--order", "shuffle", "--per-component", "--out", path("o.cmty"),
       "--report", path("o.json")},
      {"score", "--graph", g, "--cover", t, "--per-vertex", path("o.csv")},
      {"validate", "--truth", t, "--detected", path("found.cmty")},
      {"rankcorr", "--graph", g, "--truth", t, "--candidates", path("cands.txt"), "--jobs", "2"},
      {"perturb", "--graph", g, "--truth", t, "--trials", "4", "--jobs", "3"},
      {"sample", "--graph", g, "--truth", t, "--graph-out", path("o.edges"), "--cover-out",
       path("o.cmty"), "--map-out", path("o.csv")},
      {"analyze", "--graph", g, "--cover", t, "--mode", "profile"},
      {"analyze", "--graph", g, "--cover", t, "--mode", "farness", "--allow-disconnected"},
      {"analyze", "--graph", g, "--cover", t, "--mode", "assortativity"},
      {"analyze", "--graph", g, "--cover", t, "--mode", "layers", "--x-grid", "20",
       "--layers", "1,4", "--trials", "2", "--jobs", "2"},
      {"spread", "--graph", g, "--cover", t, "--k", "3", "--runs", "20", "--jobs", "2"},
  };
  const std::vector<std::string> files = {path("o.edges"), path("o.cmty"), path("o.json"),
                                          path("o.csv")};
  for (auto cmd : commands) {
    cmd.insert(cmd.end(), {"--seed", "11"});
    std::vector<std::string> outputs[2];
    for (int run_index = 0; run_index < 2; ++run_index) {
      for (const auto& f : files) fs::remove(f);
      const Result r = call(cmd);
      ASSERT_EQ(r.code, 0) << cmd[0] << ": " << r.err;
      outputs[run_index].push_back(r.out);
      for (const auto& f : files) outputs[run_index].push_back(fs::exists(f) ? slurp(f) : "");
    }
    EXPECT_EQ(outputs[0], outputs[1]) << cmd[0];
    EXPECT_TRUE(std::any_of(outputs[0].begin(), outputs[0].end(),
                            [](const std::string& s) { return !s.empty(); }))
        << cmd[0];
  }
}

}  // namespace
}  // namespace genperm::cli
