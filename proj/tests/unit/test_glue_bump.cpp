#include "gbsat/generators.hpp"
#include "gbsat/glue_bump.hpp"
#include "gbsat/solver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

using namespace gbsat;
using gbsat::testing::lits;

TEST(GlueTracker, FirstGlueClause) {
  GlueTracker g(3);
  auto c = lits({1, -2});
  g.on_glue_clause_learned(c, 2);
  EXPECT_EQ(g.glue_level(Var(0)), 1u);
  EXPECT_EQ(g.glue_level(Var(1)), 1u);
  EXPECT_EQ(g.glue_level(Var(2)), 0u);
  EXPECT_EQ(g.total_glue_level(), 2u);
  EXPECT_EQ(g.glue_var_count(), 2u);
  EXPECT_EQ(g.glue_clause_count(), 1u);
}

TEST(GlueTracker, RepeatedVariable) {
  GlueTracker g(3);
  auto a = lits({1, 2});
  auto b = lits({-1, 3});
  g.on_glue_clause_learned(a, 2);
  g.on_glue_clause_learned(b, 2);
  EXPECT_EQ(g.glue_level(Var(0)), 2u);
  EXPECT_EQ(g.glue_var_count(), 3u);
}

TEST(GlueTracker, RejectsNonGlueLbd) {
  GlueTracker g(3);
  auto c = lits({1, 2, 3});
  EXPECT_THROW(g.on_glue_clause_learned(c, 3), std::invalid_argument);
  GlueTracker wide(3, false, GlueLbdRange{2, 3});
  EXPECT_NO_THROW(wide.on_glue_clause_learned(c, 3));
}

TEST(GlueTracker, RecountOracle) {
  std::mt19937 rng(17);
  const uint32_t n = 30;
  GlueTracker g(n);
  std::vector<std::vector<Lit>> log;
  for (int i = 0; i < 100; ++i) {
    std::vector<Lit> c;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int j = 0; j < len; ++j) {
      Lit l(Var(rng() % n), rng() % 2 == 0);
      if (std::find_if(c.begin(), c.end(), [&](Lit x) { return x.var() == l.var(); }) == c.end())
        c.push_back(l);
    }
    g.on_glue_clause_learned(c, 2);
    log.push_back(c);
  }
  std::map<uint32_t, uint32_t> count;
  uint64_t total = 0;
  for (const auto& c : log)
    for (Lit l : c) {
      ++count[l.var().index];
      ++total;
    }
  for (uint32_t v = 0; v < n; ++v) EXPECT_EQ(g.glue_level(Var(v)), count[v]) << v;
  EXPECT_EQ(g.total_glue_level(), total);
  EXPECT_EQ(g.glue_var_count(), count.size());
}

TEST(GlueCentrality, Examples) {
  GlueTracker g(2);
  EXPECT_THROW((void)g.glue_centrality(Var(0)), UndefinedCentrality);
  auto one = lits({1});
  g.on_glue_clause_learned(one, 2);
  EXPECT_EQ(g.glue_centrality(Var(0)).value, 1.0);

  GlueTracker h(2);
  for (int i = 0; i < 3; ++i) h.on_glue_clause_learned(one, 2);
  auto two = lits({2});
  h.on_glue_clause_learned(two, 2);
  EXPECT_EQ(h.glue_centrality(Var(0)).value, 0.75);
  EXPECT_EQ(h.glue_centrality(Var(1)).value, 0.25);
}

namespace {

// gl = {v1:3, v2:1}
GlueTracker three_one(bool bump) {
  GlueTracker g(2, bump);
  auto one = lits({1});
  auto two = lits({2});
  for (int i = 0; i < 3; ++i) g.on_glue_clause_learned(one, 2);
  g.on_glue_clause_learned(two, 2);
  return g;
}

} // namespace

TEST(GlueBump, UnassignmentExample) {
  GlueTracker g = three_one(true);
  ActivityTable a(2);
  a.bump(Var(0), 2.0);
  EXPECT_EQ(g.on_unassigned(Var(0), a), 1.5);
  EXPECT_EQ(a.activity(Var(0)), 3.5);
}

TEST(GlueBump, ZeroActivityUnchanged) {
  GlueTracker g = three_one(true);
  ActivityTable a(2);
  EXPECT_EQ(g.on_unassigned(Var(1), a), 0.0);
  EXPECT_EQ(a.activity(Var(1)), 0.0);
}

TEST(GlueBump, DisabledOrNonGlueIsNoop) {
  GlueTracker off = three_one(false);
  ActivityTable a(3);
  a.bump(Var(0), 2.0);
  EXPECT_EQ(off.on_unassigned(Var(0), a), 0.0);
  EXPECT_EQ(a.activity(Var(0)), 2.0);

  GlueTracker on(3, true);
  auto c = lits({1});
  on.on_glue_clause_learned(c, 2);
  a.bump(Var(2), 4.0);
  EXPECT_EQ(on.on_unassigned(Var(2), a), 0.0);
  EXPECT_EQ(a.activity(Var(2)), 4.0);
}

TEST(GlueBump, ScaleEquivariant) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> act(0.0, 100.0);
  GlueTracker g = three_one(true);
  for (int i = 0; i < 1000; ++i) {
    const double base = act(rng);
    const double c = std::ldexp(1.0, static_cast<int>(rng() % 40) - 20) * (1.0 + act(rng));
    ActivityTable a(2), b(2);
    a.bump(Var(0), base);
    b.bump(Var(0), base * c);
    g.on_unassigned(Var(0), a);
    g.on_unassigned(Var(0), b);
    EXPECT_NEAR(b.activity(Var(0)) / (a.activity(Var(0)) * c), 1.0, 1e-12);
  }
}

namespace {

struct TraceRecorder : SearchObserver {
  struct Unassign {
    Var v;
    double before, after;
    size_t glue_clauses_seen;
  };
  std::vector<std::vector<Lit>> glue_log;
  std::vector<Unassign> unassigns;
  std::vector<std::pair<Lit, bool>> decisions;

  void on_learn(const ConflictAnalysis& a, bool glue) override {
    if (glue) glue_log.push_back(a.learnt);
  }
  void on_unassign(Var v, double before, double after) override {
    unassigns.push_back({v, before, after, glue_log.size()});
  }
  void on_decision(Lit d, bool is_glue) override { decisions.emplace_back(d, is_glue); }
};

} // namespace

// Each recorded unassignment is recomputed offline from the glue-clause log.
TEST(GlueBump, TraceReplay) {
  Formula f = gen::random_ksat(80, 341, 3, 12);
  SolverConfig cfg;
  cfg.glue_bump = true;
  Solver s(f, cfg);
  TraceRecorder rec;
  s.set_observer(&rec);
  Budget budget;
  budget.max_conflicts = 3000;
  (void)s.solve(budget);
  ASSERT_FALSE(rec.glue_log.empty());

  std::vector<uint32_t> gl(f.num_vars, 0);
  uint64_t total = 0;
  size_t applied = 0;
  size_t bumped = 0;
  for (const auto& u : rec.unassigns) {
    while (applied < u.glue_clauses_seen) {
      for (Lit l : rec.glue_log[applied]) ++gl[l.var().index];
      total += rec.glue_log[applied].size();
      ++applied;
    }
    double expect = u.before;
    if (gl[u.v.index] > 0) {
      expect = u.before + u.before * (static_cast<double>(gl[u.v.index]) / total);
      ++bumped;
    }
    // A rescale inside the bump shrinks everything by 1e-100.
    if (u.after < u.before) expect *= 1e-100;
    if (expect == 0.0)
      ASSERT_EQ(u.after, 0.0);
    else
      ASSERT_NEAR(u.after / expect, 1.0, 1e-9);
  }
  EXPECT_GT(bumped, 0u);
}

// Decisions are classified by the glue-clause log at decision time, and a
// variable's glue level never decreases.
TEST(GlueTracker, ClassificationMatchesLogAndIsMonotone) {
  Formula f = gen::random_ksat(80, 341, 3, 21);
  Solver s(f);
  struct Obs : SearchObserver {
    const Solver* s = nullptr;
    std::vector<uint32_t> gl;
    std::vector<uint32_t> last_snapshot;
    bool ok = true;
    size_t checked = 0;
    void on_learn(const ConflictAnalysis& a, bool glue) override {
      if (glue)
        for (Lit l : a.learnt) ++gl[l.var().index];
    }
    void on_decision(Lit d, bool is_glue) override {
      ok = ok && (is_glue == (gl[d.var().index] > 0));
      auto now = s->glue().glue_levels();
      for (size_t v = 0; v < now.size(); ++v) {
        ok = ok && now[v] == gl[v];
        ok = ok && now[v] >= last_snapshot[v];
      }
      last_snapshot.assign(now.begin(), now.end());
      ++checked;
    }
  } obs;
  obs.s = &s;
  obs.gl.assign(f.num_vars, 0);
  obs.last_snapshot.assign(f.num_vars, 0);
  s.set_observer(&obs);
  Budget budget;
  budget.max_conflicts = 2000;
  (void)s.solve(budget);
  EXPECT_TRUE(obs.ok);
  EXPECT_GT(obs.checked, 100u);
}

TEST(GlueCentrality, SumsToOne) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Formula f = gen::random_ksat(100, 426, 3, seed);
    SolverConfig cfg;
    cfg.glue_bump = seed % 2 == 1;
    Solver s(f, cfg);
    Budget budget;
    budget.max_conflicts = 2000;
    (void)s.solve(budget);
    if (s.glue().total_glue_level() == 0) continue;
    double sum = 0.0;
    for (uint32_t v = 0; v < f.num_vars; ++v) sum += s.glue().glue_centrality(Var(v)).value;
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

// Tracking without bumping must not perturb the search.
TEST(GlueTracker, TrackingDoesNotChangeBaselineSearch) {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Formula f = gen::random_ksat(90, 383, 3, seed + 40);
    SolverConfig tracked;
    SolverConfig untracked;
    untracked.glue_tracking = false;
    Solver a(f, tracked), b(f, untracked);
    TraceRecorder ra, rb;
    a.set_observer(&ra);
    b.set_observer(&rb);
    SolveResult x = a.solve();
    SolveResult y = b.solve();
    EXPECT_EQ(x.verdict, y.verdict);
    EXPECT_EQ(x.counters, y.counters);
    ASSERT_EQ(ra.decisions.size(), rb.decisions.size());
    for (size_t i = 0; i < ra.decisions.size(); ++i)
      ASSERT_EQ(ra.decisions[i].first, rb.decisions[i].first) << i;
    EXPECT_EQ(b.glue().glue_var_count(), 0u);
  }
}
