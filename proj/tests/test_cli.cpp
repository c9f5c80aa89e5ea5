#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "liftratio_cli.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using liftratio::test_support::P;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = liftratio::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(LIFTRATIO_DATA_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("liftratio_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

class HelpGolden : public ::testing::TestWithParam<std::string> {};

TEST_P(HelpGolden, MatchesFile) {
  std::string name = GetParam();
  std::vector<std::string> args;
  std::string file = "help";
  std::istringstream words(name);
  for (std::string w; words >> w;) {
    args.push_back(w);
    file += "_" + w;
  }
  args.push_back("--help");
  Result r = run(args);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(std::string(LIFTRATIO_GOLDEN_DIR) + "/" + file + ".txt"));
}

INSTANTIATE_TEST_SUITE_P(Subcommands, HelpGolden,
                         ::testing::Values("", "arbor", "laplacian", "cover", "cover derive", "cover validate",
                                           "cover laplacian", "cover ratio", "expect", "moment"));

TEST(Cli, ArborBoth) {
  Result r = run({"arbor", "--graph", data("complete3.graph"), "--root", "1", "--method", "both"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "root 1\n  matrix-tree: x21*x31 + x21*x32 + x23*x31\n  brute-force: x21*x31 + x21*x32 + x23*x31\n  MATCH\n");
  Result all = run({"arbor", "--graph", data("complete3.graph"), "--porcelain"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(lines(all.out).size(), 9u);
}

TEST(Cli, CoverRatioCheckDirect) {
  Result r = run({"cover", "ratio", "--graph", data("triple3.vgraph"), "--check-direct", "--porcelain"});
  EXPECT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls[0], "ratio\ta*b*c^2*d^2 + a*b*c^2*d*e + b^2*c^2*d^2 + b^2*c^2*d*e");
  EXPECT_EQ(ls[1], "integral\tyes");
  for (std::size_t i = 2; i < 11; ++i) EXPECT_TRUE(ls[i].ends_with("\tMATCH")) << ls[i];
  EXPECT_EQ(ls[11], "check\tMATCH");
}

TEST(Cli, ExpectFormula) {
  Result r = run({"expect", "--graph", data("triple3.vgraph"), "--k", "3", "--mode", "formula"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "k: 3\nformula: " + P("1/3*(a+b)^2*c^2*(d+e)^2").to_string() + "\n");
}

TEST(Cli, ExpectExactNumeric) {
  Result r = run({"expect", "--graph", data("triple3.vgraph"), "--mode", "exact", "--assign", "a=1,b=2,c=3,d=5,e=7",
                  "--porcelain"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\texact=3888\t"), std::string::npos) << r.out;
  EXPECT_TRUE(r.out.ends_with("check=MATCH\n"));
}

TEST(Cli, ExpectMcIsDeterministic) {
  std::vector<std::string> args{"expect", "--graph", data("two_loops.vgraph"), "--mode", "mc", "--assign", "a=1,b=2",
                                "--samples", "3000", "--seed", "42"};
  Result a = run(args), b = run(args);
  args.insert(args.end(), {"--workers", "3"});
  Result c = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, LaplacianAndCoverMatrices) {
  Result r = run({"cover", "laplacian", "--graph", data("triple3.vgraph")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out)[0], "columns: 1^2 1^3 2^2 2^3 3^2 3^3");
  EXPECT_EQ(lines(r.out)[2], "1^3: [a, 2*a + b, b, b, 0, 0]");
  Result same = run({"laplacian", "--graph", data("triple3.vgraph"), "--matrix", "voltage"});
  EXPECT_EQ(same.out, r.out);
  Result d = run({"laplacian", "--graph", data("complete3.graph"), "--matrix", "degree", "--porcelain"});
  EXPECT_EQ(lines(d.out)[1], "degree\t2\t0\tx21 + x22 + x23\t0");
}

TEST(Cli, DeriveThenValidate) {
  Result d = run({"cover", "derive", "--graph", data("triple3.vgraph")});
  ASSERT_EQ(d.code, 0);
  std::string cover = write_temp("cover.graph", d.out);
  Result v = run({"cover", "validate", "--graph", data("triple3.vgraph"), "--cover", cover, "--porcelain"});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.out, "valid\tyes\n");

  std::string broken = d.out;
  broken.erase(broken.rfind("edge"));  // drop the last lifted edge
  Result bad = run({"cover", "validate", "--graph", data("triple3.vgraph"), "--cover", write_temp("broken.graph", broken)});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("condition 2"), std::string::npos);
  EXPECT_NE(bad.out.find("condition 4"), std::string::npos);
}

TEST(Cli, Moment) {
  Result r = run({"moment", "--k", "4", "--t", "3", "--brute", "--porcelain"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "formula\t4\t3\t-1/12\nbrute\t6\t6\tMATCH\n");
  EXPECT_EQ(run({"moment", "--k", "3", "--t", "3"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"arbor"}).code, 1);
  EXPECT_EQ(run({"arbor", "--graph", data("complete3.graph"), "--method", "fast"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);

  EXPECT_EQ(run({"arbor", "--graph", data("complete3.graph"), "--root", "9"}).code, 2);
  EXPECT_EQ(run({"arbor", "--graph", write_temp("bad.graph", "vertex a\nedge a b weight x\n")}).code, 2);
  EXPECT_EQ(run({"cover", "ratio", "--graph", data("complete3.graph")}).code, 2);
  EXPECT_EQ(run({"expect", "--graph", data("complete3.graph"), "--mode", "formula"}).code, 2);
  EXPECT_EQ(run({"expect", "--graph", data("two_loops.vgraph"), "--mode", "mc", "--assign", "a=1"}).code, 2);
  EXPECT_EQ(run({"expect", "--graph", data("two_loops.vgraph"), "--mode", "mc", "--assign", "a=x"}).code, 2);

  Result budget = run({"expect", "--graph", data("triple3.vgraph"), "--mode", "exact", "--budget", "100"});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("7776"), std::string::npos);
}
