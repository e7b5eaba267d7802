#include "gbsat/formula.hpp"
#include "gbsat/generators.hpp"
#include "csv_recount.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef GBSAT_CLI_PATH

namespace fs = std::filesystem;

namespace {

struct Output {
  int code = -1;
  std::string out;
};

Output run(const std::string& args) {
  const std::string cmd = std::string(GBSAT_CLI_PATH) + " " + args + " 2>/dev/null";
  Output o;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return o;
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) o.out.append(buf, n);
  int status = ::pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gbsat-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_F(CliTest, SolveUnsatWithProof) {
  auto cnf = file("u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  Output o = run("solve " + cnf + " --proof " + path("u.drat"));
  EXPECT_EQ(o.code, 20);
  EXPECT_NE(o.out.find("s UNSATISFIABLE"), std::string::npos);
  Output c = run("check " + cnf + " " + path("u.drat"));
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("s VERIFIED"), std::string::npos);
}

TEST_F(CliTest, SolveSatPrintsModel) {
  Output o = run("solve " + file("s.cnf", "p cnf 1 1\n1 0\n"));
  EXPECT_EQ(o.code, 10);
  EXPECT_NE(o.out.find("s SATISFIABLE\nv 1 0\n"), std::string::npos);
}

TEST_F(CliTest, SolveErrors) {
  EXPECT_EQ(run("solve " + file("bad.cnf", "p cnf 1 1\n2 0\n")).code, 1);
  EXPECT_EQ(run("solve " + path("missing.cnf")).code, 1);
  EXPECT_NE(run("solve " + path("x.cnf") + " --glue-bump maybe").code, 0);
}

TEST_F(CliTest, CheckRejectsBadProof) {
  auto cnf = file("f.cnf", "p cnf 9 2\n1 2 0\n-1 3 0\n");
  Output o = run("check " + cnf + " " + file("p.drat", "9 0\n0\n"));
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("s NOT VERIFIED"), std::string::npos);
}

TEST_F(CliTest, GenAndBench) {
  auto a = path("php.cnf");
  auto b = path("chain.cnf");
  ASSERT_EQ(run("gen php -n 4 --out " + a).code, 0);
  ASSERT_EQ(run("gen unit -n 50 --out " + b).code, 0);
  EXPECT_EQ(gbsat::parse_dimacs_file(a), gbsat::gen::pigeonhole(4));
  file("manifest.txt", "php.cnf\nchain.cnf\n");
  Output o = run("bench --manifest " + path("manifest.txt") + " --timeout 30 --jobs 2 --out-dir " +
                 path("out"));
  ASSERT_EQ(o.code, 0);
  std::ifstream records(path("out/records.csv"));
  auto recount = gbsat::testing::recount_par2(records);
  std::istringstream summary(slurp(path("out/summary.csv")));
  std::string line;
  std::getline(summary, line);
  size_t rows = 0;
  while (std::getline(summary, line)) {
    auto f = gbsat::testing::split_csv_line(line);
    EXPECT_EQ(gbsat::testing::micros_to_decimal(recount.at(f[0]).par2_micros), f[5]);
    EXPECT_EQ(f[1], "1");
    EXPECT_EQ(f[2], "1");
    ++rows;
  }
  EXPECT_EQ(rows, 2u);
  EXPECT_TRUE(fs::exists(path("out/series.csv")));
}

#endif
