#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli/cache.hpp"
#include "cli/io.hpp"
#include "cli/run.hpp"

using namespace pencillab::cli;

namespace {

struct Outcome {
  int code = 0;
  std::string text;
  Json doc() const { return Json::parse(text); }
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("pencillab-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(dir_);
    setenv("PENCILLAB_CACHE", dir_.c_str(), 1);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, NumerologyExample) {
  const auto r = run_cli({"numerology", "--g", "4", "--k", "2", "--e", "2,2"});
  ASSERT_EQ(r.code, 0);
  const auto d = r.doc();
  EXPECT_EQ(d["rho_tilde"], -4);
  EXPECT_EQ(d["codim"], 4);
  EXPECT_EQ(d["verdict"], "GenericallyFinite");
  for (const char* key : {"g", "k", "n", "e", "rho", "rho_tilde", "r", "hurwitz_dim", "codim", "verdict"})
    EXPECT_TRUE(d.contains(key)) << key;
}

TEST_F(Cli, NumerologyCsvSweep) {
  const auto r = run_cli({"--format", "csv", "numerology", "--g", "0..2", "--k", "3", "--e", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.text,
            "g,k,n,e,rho,rho_tilde,r,hurwitz_dim,codim,pencil_dim,verdict\n"
            "0,3,1,3,4,2,2,0,0,2,Dominant\n"
            "1,3,1,3,3,1,4,2,0,1,Dominant\n"
            "2,3,1,3,2,0,6,4,0,0,Dominant\n");
}

TEST_F(Cli, SeveriExistsFalseExitsOne) {
  const auto r = run_cli({"severi", "exists", "--p", "5", "--delta", "1", "--k", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["exists"], false);
  EXPECT_EQ(r.doc()["error"], "EmptyVariety");
  const auto t = run_cli({"severi", "exists", "--p", "5", "--delta", "2", "--k", "2"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.doc()["exists"], true);
}

TEST_F(Cli, MonodromyConstructExample) {
  const auto r = run_cli({"monodromy", "construct", "--k", "3", "--e", "2,2,2,2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["cycles"], Json::parse("[[1,2],[2,3],[2,3],[1,2]]"));
  EXPECT_EQ(r.doc()["verified"], true);
}

TEST_F(Cli, MonodromyInfeasibleProfile) {
  const auto r = run_cli({"monodromy", "construct", "--k", "3", "--e", "3,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["error"], "ProfileInfeasible");
  EXPECT_TRUE(r.doc()["detail"].is_string());
}

TEST_F(Cli, MonodromyEnumerateAndVerify) {
  const auto e = run_cli({"monodromy", "enumerate", "--k", "3", "--e", "3,3"});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(e.doc()["count"], 2);
  const auto v = run_cli({"monodromy", "verify", "--k", "4", "--tuple", "[[1,2],[3,4]]"});
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(v.doc()["report"]["transitive"], false);
  const auto p = run_cli({"monodromy", "pad", "--k", "4", "--e", "2,2"});
  ASSERT_EQ(p.code, 0);
}

TEST_F(Cli, PencilCommands) {
  const auto b = run_cli({"pencil", "bezoutian", "--pencil", "0,0,1;1,-2,1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(b.doc()["curve"]["text"], "v - 2*w");
  EXPECT_EQ(b.doc()["curve"]["coeffs"], Json::parse(R"(["0","1","-2"])"));

  const auto s = run_cli({"pencil", "same-fiber", "--pencil", "0,0,1;1,-2,1", "--a", "1:2", "--b", "3:2"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.doc()["same_fiber"], true);
  EXPECT_EQ(s.doc()["curve_incidence"], true);

  const auto w = run_cli({"pencil", "wronskian", "--pencil", "1,0;0,1"});
  EXPECT_EQ(w.code, 0);
  const auto bp = run_cli({"pencil", "wronskian", "--pencil", "1,0,0;0,1,0"});
  EXPECT_EQ(bp.code, 1);
  EXPECT_EQ(bp.doc()["error"], "BasePointPresent");

  const auto f = run_cli({"--q", "5", "pencil", "total", "--a", "1:1", "--b", "1:-1", "--k", "2"});
  ASSERT_EQ(f.code, 0);
  EXPECT_EQ(f.doc()["field"], Json::parse(R"({"q":5})"));

  const auto dep = run_cli({"pencil", "bezoutian", "--pencil", "1,2;2,4"});
  EXPECT_EQ(dep.code, 1);
  EXPECT_EQ(dep.doc()["error"], "DegeneratePencil");
}

TEST_F(Cli, SeveriAlphaCsvAndDescend) {
  const auto a = run_cli({"--format", "csv", "severi", "alpha", "--p", "5", "--delta", "2", "--k", "2"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.text, "alpha_1,alpha_2,alpha_3,alpha_4,alpha_5,genus,delta\n1,2,0,0,0,3,2\n2,0,1,0,0,3,2\n");
  const auto d = run_cli({"severi", "descend", "--pencil", "0,0,1;1,-2,1", "--pairs", "1:2,3:2", "--marked",
                          "1:0@2;1:1@2"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.doc()["descends"], true);
  const auto z = run_cli({"severi", "delta0", "--p", "5", "--k", "2"});
  EXPECT_EQ(z.doc()["delta0"], 2);
}

TEST_F(Cli, DimlabSearchUsesCache) {
  const std::vector<std::string> args{"--q", "5", "dimlab", "search", "--k", "2", "--ramification", "1:0@2;0:1@2"};
  const auto first = run_cli(args);
  ASSERT_EQ(first.code, 0);
  EXPECT_EQ(first.doc()["count"], 1);
  EXPECT_EQ(first.doc()["grassmannian"], 31);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) files += entry.path().extension() == ".json";
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(run_cli(args).text, first.text);
  auto uncached = args;
  uncached.insert(uncached.begin(), "--no-cache");
  EXPECT_EQ(run_cli(uncached).text, first.text);
}

TEST_F(Cli, CacheRejectsMismatchedEntries) {
  const ResultCache cache(dir_);
  const Json request{{"a", 1}};
  cache.store(request, Json{{"x", 2}});
  ASSERT_TRUE(cache.load(request).has_value());
  EXPECT_EQ((*cache.load(request))["x"], 2);
  EXPECT_FALSE(cache.load(Json{{"a", 2}}).has_value());
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_F(Cli, ReproduceCommands) {
  const auto p = run_cli({"reproduce", "example-p345"});
  ASSERT_EQ(p.code, 0);
  bool seen = false;
  const auto doc = p.doc();
  for (const auto& row : doc["rows"])
    if (row["p"] == 5 && row["k"] == 2) {
      EXPECT_EQ(row["delta0"], 2);
      seen = true;
    }
  EXPECT_TRUE(seen);
  const auto u = run_cli({"reproduce", "unique-pencil"});
  ASSERT_EQ(u.code, 0);
  EXPECT_EQ(u.doc()["count"], 1);
}

TEST_F(Cli, DimlabEstimate) {
  const auto r = run_cli({"dimlab", "estimate", "--counts", "5:806,7:2850"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["nearest"], 4);
  const auto z = run_cli({"dimlab", "estimate", "--counts", "5:806,7:0"});
  EXPECT_EQ(z.code, 1);
  EXPECT_EQ(z.doc()["error"], "ZeroCount");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"numerology", "--g", "1", "--k", "2", "--unknown", "3"},
           {"numerology", "--g", "x", "--k", "2"},
           {"--format", "xml", "numerology", "--g", "1", "--k", "2"},
           {"--format", "csv", "monodromy", "construct", "--k", "2", "--e", "2,2"},
           {"monodromy"},
       }) {
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 2) << r.text;
    EXPECT_TRUE(r.doc().contains("error")) << r.text;
    EXPECT_TRUE(r.doc().contains("detail"));
  }
}

TEST_F(Cli, OutputIsByteStable) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"monodromy", "enumerate", "--k", "4", "--e", "3,3,2,2"},
           {"--jobs", "3", "monodromy", "enumerate", "--k", "4", "--e", "3,3,2,2"},
       }) {
    EXPECT_EQ(run_cli(args).text, run_cli({"monodromy", "enumerate", "--k", "4", "--e", "3,3,2,2"}).text);
  }
  const std::vector<std::string> s{"--no-cache", "--q", "7", "dimlab", "search", "--k", "3", "--incidence", "1:3:2"};
  auto par = s;
  par.insert(par.begin(), {"--jobs", "4"});
  EXPECT_EQ(run_cli(s).text, run_cli(par).text);
}
