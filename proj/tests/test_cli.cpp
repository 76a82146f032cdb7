#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "../tools/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "cyclerank");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cyclerank::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cyclerank_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

const char* kC4 = "digraph 4\n0 1\n1 2\n2 3\n3 0\n";
const char* kK3 = "digraph 3\n0 1\n0 2\n1 0\n1 2\n2 0\n2 1\n";

}  // namespace

TEST_F(CliTest, CrankExact) {
  auto r = run({"crank", "exact", file("c4.dg", kC4)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "crank 1\n0 {0,1,2,3}\n");
}

TEST_F(CliTest, CrankBruteAndApprox) {
  auto k3 = file("k3.dg", kK3);
  EXPECT_EQ(run({"crank", "brute", k3}).out, "crank 2\n");
  auto a = run({"crank", "approx", k3, "--base-threshold", "1", "--separator", "greedy"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out.rfind("height 2 base-threshold 1\n", 0), 0u) << a.out;
}

TEST_F(CliTest, Bounds) {
  auto r = run({"bounds", file("k3.dg", kK3)});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "snum 2 dpw 2 crank 2 rk-1 2 chain ok\n");
}

TEST_F(CliTest, KeyValueFormat) {
  auto r = run({"--format", "kv", "bounds", file("k3.dg", kK3)});
  EXPECT_EQ(r.out, "snum=2\ndpw=2\ncrank=2\nrk-1=2\nchain=ok\n");
}

TEST_F(CliTest, StarHeightOfRegex) {
  auto r = run({"sh", "regex", "(a*b)*"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "sh 2\n");
  auto bad = run({"sh", "regex", "(a"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error:", 0), 0u);
}

TEST_F(CliTest, ForestValidateExitCodes) {
  auto c3 = file("c3.dg", "digraph 3\n0 1\n1 2\n2 0\n");
  EXPECT_EQ(run({"forest", "validate", c3, file("good.f", "0 {0,1,2}\n")}).code, 0);
  auto bad = run({"forest", "validate", c3, file("bad.f", "0 {0,1}\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("valid no"), std::string::npos);
}

TEST_F(CliTest, ErrorCodes) {
  EXPECT_EQ(run({"crank", "exact", (dir_ / "missing.dg").string()}).code, 1);
  auto parse = run({"dpw", file("bad.dg", "digraph 2\n0 5\n")});
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"reduce", "walk", file("p.dg", "digraph 2\n0 1\n"), "0"}).code, 2);
  EXPECT_EQ(run({"crank", "exact", "-", "--memo-limit", "2"}, "digraph 6\n" + std::string([] {
                  std::string e;
                  for (int u = 0; u < 6; ++u)
                    for (int v = 0; v < 6; ++v)
                      if (u != v) e += std::to_string(u) + " " + std::to_string(v) + "\n";
                  return e;
                }())).code,
            3);
  EXPECT_EQ(run({"crank", "exact"}).code, 1);
  EXPECT_EQ(run({"crank", "exact", "x", "--no-such-flag"}).code, 1);
  EXPECT_EQ(run({"bounds", file("loop.dg", "digraph 1\n0 0\n")}).code, 1);
}

TEST_F(CliTest, DuplicateEdgesWarn) {
  auto r = run({"crank", "exact", "-"}, "digraph 2\n0 1\n0 1\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning: 1 duplicate"), std::string::npos);
}

TEST_F(CliTest, Dfvs) {
  auto c4 = file("c4.dg", kC4);
  EXPECT_EQ(run({"dfvs", "min", c4}).out, "size 1 forced {} maximal-acyclic 4\n{0}\n");
  auto e = run({"dfvs", "enumerate", file("k3.dg", kK3)});
  EXPECT_EQ(e.out, "count 3\n{0,1}\n{0,2}\n{1,2}\n");
  EXPECT_EQ(run({"dfvs", "enumerate", c4, "--cap", "2"}).code, 3);
}

TEST_F(CliTest, CountAndWidths) {
  auto k3 = file("k3.dg", kK3);
  EXPECT_EQ(run({"count-sc", k3}).out, "total 7 nontrivial 4 outdeg 2 bound 10.0\n");
  EXPECT_EQ(run({"dpw", file("c4.dg", kC4)}).out.rfind("dpw 1\n", 0), 0u);
  EXPECT_EQ(run({"snum", k3}).out.rfind("snum 2\n", 0), 0u);
}

TEST_F(CliTest, ReductionsPipeline) {
  auto walk = run({"reduce", "walk", file("k3.dg", kK3), "0"});
  ASSERT_EQ(walk.code, 0);
  auto aut = file("walk.aut", walk.out);
  EXPECT_EQ(run({"sh", "bidet", aut}).out.rfind("sh 2 ", 0), 0u);
  auto bin = run({"reduce", "binarize", aut});
  ASSERT_EQ(bin.code, 0);
  EXPECT_EQ(run({"sh", "bidet", "-"}, bin.out).out.rfind("sh 2 ", 0), 0u);
}

TEST_F(CliTest, BenchIsReproducible) {
  auto a = run({"bench", "crank", "--n", "12", "--trials", "3", "--seed", "9"});
  auto b = run({"bench", "crank", "--n", "12", "--trials", "3", "--seed", "9"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("over-bound 0"), std::string::npos);
  EXPECT_EQ(run({"bench", "crank", "--n", "0", "--trials", "1"}).code, 0);
}

TEST_F(CliTest, HelpAndVersion) {
  auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, std::string(cyclerank::cli::kVersion) + "\n");
  auto h = run({"crank", "--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("approx"), std::string::npos);
}
