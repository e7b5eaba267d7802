#include "gbsat/bench.hpp"
#include "gbsat/generators.hpp"
#include "csv_recount.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace gbsat;
using namespace gbsat::bench;
namespace fs = std::filesystem;

namespace {

RunRecord record(const std::string& inst, const std::string& cfg, Verdict v, double wall,
                 double timeout) {
  RunRecord r;
  r.instance = inst;
  r.config = cfg;
  r.verdict = v;
  r.wall_time = wall;
  r.timeout = timeout;
  return r;
}

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("gbsat-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

private:
  static inline int counter_ = 0;
  fs::path path_;
};

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST(Par2, BothSolved) {
  auto s = summarize({record("a", "x", Verdict::Sat, 1.0, 5000), record("b", "x", Verdict::Unsat, 1.0, 5000)},
                     {"x"});
  EXPECT_EQ(s[0].par2_micros, 2000000);
  EXPECT_EQ(s[0].par2_seconds(), 2.0);
}

TEST(Par2, UnsolvedPenalty) {
  auto s = summarize({record("a", "x", Verdict::Sat, 1.0, 5000),
                      record("b", "x", Verdict::Unknown, 5000.2, 5000)},
                     {"x"});
  EXPECT_EQ(s[0].par2_seconds(), 10001.0);
  EXPECT_EQ(s[0].unsolved, 1u);
  EXPECT_EQ(s[0].solved_sat, 1u);
}

TEST(Par2, ErroredExcluded) {
  RunRecord bad = record("c", "x", Verdict::Unknown, 0, 10);
  bad.errored = true;
  auto s = summarize({record("a", "x", Verdict::Sat, 0.5, 10), bad}, {"x"});
  EXPECT_EQ(s[0].par2_micros, 500000);
  EXPECT_EQ(s[0].errored, 1u);
}

TEST(Par2, SumIsExactInMicros) {
  std::vector<RunRecord> rs;
  for (int i = 0; i < 1000; ++i) rs.push_back(record("i", "x", Verdict::Sat, 0.000001 * 3, 1));
  EXPECT_EQ(summarize(rs, {"x"})[0].par2_micros, 3000);
}

TEST(Series, SolvedDifference) {
  std::vector<RunRecord> rs{record("a", "base", Verdict::Sat, 2.0, 10),
                            record("a", "gb", Verdict::Sat, 1.0, 10),
                            record("b", "base", Verdict::Unknown, 10, 10),
                            record("b", "gb", Verdict::Unsat, 6.0, 10)};
  auto series = solved_difference_series(rs, "base", "gb", 10, 11);
  ASSERT_EQ(series.size(), 11u);
  EXPECT_EQ(series[0].solved_difference, 0);
  EXPECT_EQ(series[1].solved_difference, 1);
  EXPECT_EQ(series[2].solved_difference, 0);
  EXPECT_EQ(series[6].solved_difference, 1);
  EXPECT_EQ(series[10].time, 10.0);
}

TEST(Contradictions, Detected) {
  std::vector<RunRecord> rs{record("a", "x", Verdict::Sat, 1, 10),
                            record("a", "y", Verdict::Unsat, 1, 10),
                            record("b", "x", Verdict::Sat, 1, 10),
                            record("b", "y", Verdict::Unknown, 1, 10)};
  EXPECT_EQ(find_contradictions(rs), std::vector<std::string>{"a"});
}

TEST(Manifest, RelativePathsAndComments) {
  TempDir dir;
  write_file(dir.path() / "m.txt", "# corpus\n\n a.cnf \n/abs/b.cnf\n");
  auto paths = read_manifest((dir.path() / "m.txt").string());
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_EQ(paths[0], (dir.path() / "a.cnf").string());
  EXPECT_EQ(paths[1], "/abs/b.cnf");
  EXPECT_THROW((void)read_manifest((dir.path() / "none.txt").string()), std::runtime_error);
}

TEST(RunInstance, ParseErrorIsErroredRecord) {
  TempDir dir;
  write_file(dir.path() / "bad.cnf", "p cnf 1 1\n2 0\n");
  RunRecord r = run_instance((dir.path() / "bad.cnf").string(), baseline_config(), {});
  EXPECT_TRUE(r.errored);
  EXPECT_FALSE(r.solved());
}

TEST(RunCorpus, IsolatedAndInProcessAgree) {
  TempDir dir;
  std::vector<std::string> paths;
  for (uint32_t holes : {3u, 4u}) {
    auto p = dir.path() / ("php" + std::to_string(holes) + ".cnf");
    write_file(p, to_dimacs(gen::pigeonhole(holes)));
    paths.push_back(p.string());
  }
  auto sat = dir.path() / "sat.cnf";
  write_file(sat, to_dimacs(gen::unit_chain(30, false)));
  paths.push_back(sat.string());
  paths.push_back((dir.path() / "missing.cnf").string());

  CorpusOptions opts;
  opts.timeout = 20;
  opts.jobs = 3;
  std::vector<RunConfig> configs{baseline_config(), glue_bump_config()};
  CorpusResult iso = run_corpus(paths, configs, opts);
  opts.isolate = false;
  CorpusResult local = run_corpus(paths, configs, opts);

  ASSERT_EQ(iso.records.size(), 8u);
  for (size_t i = 0; i < iso.records.size(); ++i) {
    EXPECT_EQ(iso.records[i].instance, local.records[i].instance);
    EXPECT_EQ(iso.records[i].config, local.records[i].config);
    EXPECT_EQ(iso.records[i].verdict, local.records[i].verdict);
    EXPECT_EQ(iso.records[i].errored, local.records[i].errored);
    EXPECT_EQ(iso.records[i].metrics.totals, local.records[i].metrics.totals);
  }
  EXPECT_TRUE(iso.records[6].errored);
  EXPECT_EQ(iso.warnings.size(), 2u);
  EXPECT_TRUE(iso.contradictions.empty());
  ASSERT_EQ(iso.summary.size(), 2u);
  EXPECT_EQ(iso.summary[0].solved_unsat, 2u);
  EXPECT_EQ(iso.summary[0].solved_sat, 1u);
  EXPECT_EQ(iso.summary[0].errored, 1u);
  EXPECT_EQ(iso.series.size(), opts.series_points);
}

TEST(RunCorpus, TimeoutCountsAsUnsolved) {
  TempDir dir;
  auto p = dir.path() / "php10.cnf";
  write_file(p, to_dimacs(gen::pigeonhole(10)));
  CorpusOptions opts;
  opts.timeout = 0.05;
  CorpusResult r = run_corpus({p.string()}, {baseline_config()}, opts);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].verdict, Verdict::Unknown);
  EXPECT_FALSE(r.records[0].errored);
  EXPECT_EQ(r.summary[0].unsolved, 1u);
  EXPECT_EQ(r.summary[0].par2_micros, 100000);
}

// A long implication chain is solved by propagation alone, where the solver
// never checks its clock, so only the harness can stop it.
TEST(RunCorpus, HardKillPastGrace) {
  TempDir dir;
  auto p = dir.path() / "chain.cnf";
  write_file(p, to_dimacs(gen::unit_chain(2000000, false)));
  CorpusOptions opts;
  opts.timeout = 0.01;
  opts.grace = 0.05;
  CorpusResult r = run_corpus({p.string()}, {baseline_config()}, opts);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_TRUE(r.records[0].killed);
  EXPECT_EQ(r.records[0].verdict, Verdict::Unknown);
  EXPECT_EQ(r.summary[0].par2_micros, 20000);
}

TEST(Csv, RecountMatchesSummary) {
  std::vector<RunRecord> rs{record("a,1", "baseline", Verdict::Sat, 0.123457, 3),
                            record("a,1", "gb", Verdict::Sat, 0.5, 3),
                            record("b", "baseline", Verdict::Unknown, 3.1, 3),
                            record("b", "gb", Verdict::Unsat, 2.999999, 3)};
  std::ostringstream csv;
  write_records_csv(csv, rs);
  std::istringstream in(csv.str());
  auto recount = gbsat::testing::recount_par2(in);
  auto summary = summarize(rs, {"baseline", "gb"});
  for (const auto& s : summary) EXPECT_EQ(recount.at(s.config).par2_micros, s.par2_micros);
  std::ostringstream sum;
  write_summary_csv(sum, summary);
  EXPECT_EQ(sum.str(), "config,solved_sat,solved_unsat,unsolved,errored,par2_sum_s\n"
                       "baseline,1,0,1,0,6.123457\n"
                       "gb,1,1,0,0,3.499999\n");
}

TEST(RunSingle, Verdicts) {
  TempDir dir;
  write_file(dir.path() / "u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  write_file(dir.path() / "s.cnf", "p cnf 1 1\n1 0\n");
  write_file(dir.path() / "bad.cnf", "p cnf 1 1\n7 0\n");

  std::ostringstream out, err;
  SingleRunOptions o;
  o.path = (dir.path() / "u.cnf").string();
  o.proof_path = (dir.path() / "u.drat").string();
  EXPECT_EQ(run_single(o, out, err), 20);
  EXPECT_NE(out.str().find("s UNSATISFIABLE\n"), std::string::npos);
  EXPECT_EQ(read_file(dir.path() / "u.drat"), "0\n");

  out.str("");
  o = {};
  o.path = (dir.path() / "s.cnf").string();
  o.stats_csv_path = (dir.path() / "s.csv").string();
  EXPECT_EQ(run_single(o, out, err), 10);
  EXPECT_NE(out.str().find("s SATISFIABLE\nv 1 0\n"), std::string::npos);
  std::string csv = read_file(dir.path() / "s.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), stats_csv_header());

  out.str("");
  o.path = (dir.path() / "bad.cnf").string();
  EXPECT_EQ(run_single(o, out, err), 1);
  EXPECT_NE(err.str().find("error"), std::string::npos);
  EXPECT_EQ(out.str().find("s "), std::string::npos);

  o.path = (dir.path() / "nope.cnf").string();
  EXPECT_EQ(run_single(o, out, err), 1);
}

TEST(RunSingle, UnknownUnderBudget) {
  TempDir dir;
  write_file(dir.path() / "php.cnf", to_dimacs(gen::pigeonhole(8)));
  std::ostringstream out, err;
  SingleRunOptions o;
  o.path = (dir.path() / "php.cnf").string();
  o.budget.max_conflicts = 10;
  EXPECT_EQ(run_single(o, out, err), 0);
  EXPECT_NE(out.str().find("s UNKNOWN\n"), std::string::npos);
}

TEST(RunSingle, ModelLinesWrap) {
  TempDir dir;
  write_file(dir.path() / "chain.cnf", to_dimacs(gen::unit_chain(100, false)));
  std::ostringstream out, err;
  SingleRunOptions o;
  o.path = (dir.path() / "chain.cnf").string();
  EXPECT_EQ(run_single(o, out, err), 10);
  std::istringstream lines(out.str());
  std::string line;
  std::vector<int> model;
  while (std::getline(lines, line)) {
    if (line.rfind("v", 0) != 0) continue;
    EXPECT_LE(line.size(), 80u);
    std::istringstream toks(line.substr(1));
    int x;
    while (toks >> x) model.push_back(x);
  }
  ASSERT_EQ(model.size(), 101u);
  EXPECT_EQ(model.back(), 0);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(model[i], i + 1);
}
