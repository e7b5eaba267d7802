#pragma once

#include "gbsat/activity.hpp"
#include "gbsat/formula.hpp"
#include "gbsat/glue_bump.hpp"
#include "gbsat/metrics.hpp"
#include "gbsat/proof.hpp"
#include "gbsat/restart.hpp"
#include "gbsat/types.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace gbsat {

struct SolverConfig {
  /// Enables the glue bump on backtrack-unassignment. Glue levels and the
  /// glue/nonglue metrics are tracked either way.
  bool glue_bump = false;
  /// Disables glue tracking entirely (no glue levels, every decision
  /// nonglue). Used to check that tracking alone never changes the search.
  bool glue_tracking = true;
  GlueLbdRange glue_lbd{};

  double var_decay = 0.95;
  double var_initial_increment = 1.0;
  double clause_decay = 0.999;

  bool restarts = true;
  uint64_t restart_base = 100;

  bool reduce_db = true;
  size_t learnt_limit_initial = 2000;
  size_t learnt_limit_increment = 300;

  /// Probability of branching on a uniformly random unassigned variable.
  /// 0 keeps the search fully activity-driven.
  double random_decision_freq = 0.0;
  uint64_t seed = 0;

  /// GF time-series sampling period in conflicts (0 disables).
  uint64_t gf_sample_interval = 10000;
};

struct Budget {
  std::optional<uint64_t> max_conflicts;
  std::optional<double> time_limit_seconds;
};

struct SolveResult {
  Verdict verdict = Verdict::Unknown;
  /// model[v] is the value of variable v; empty unless Sat.
  std::vector<bool> model;
  SearchCounters counters;
  MetricsReport metrics;
};

struct ConflictAnalysis {
  /// learnt[0] is the asserting (first UIP) literal; learnt[1], if present,
  /// has the highest decision level among the rest.
  std::vector<Lit> learnt;
  uint32_t assertion_level = 0;
  uint32_t lbd = 0;
};

/// Search event callbacks for instrumentation and tests. All no-ops by
/// default; the solver never depends on what an observer does.
class SearchObserver {
public:
  virtual ~SearchObserver() = default;
  virtual void on_decision(Lit /*decision*/, bool /*is_glue*/) {}
  virtual void on_propagation(Lit /*implied*/, ClauseRef /*reason*/) {}
  virtual void on_propagate_done(bool /*conflict*/) {}
  virtual void on_learn(const ConflictAnalysis& /*analysis*/, bool /*glue*/) {}
  /// Fires after the glue bump and before the variable re-enters the heap.
  virtual void on_unassign(Var /*v*/, double /*activity_before*/, double /*activity_after*/) {}
  virtual void on_delete(const Clause& /*clause*/) {}
  virtual void on_restart() {}
};

/// CDCL solver: two-watched-literal propagation, 1-UIP learning, EVSIDS
/// branching with phase saving, Luby restarts and LBD-based clause deletion,
/// with glue-level tracking and the optional glue bump.
///
/// Besides solve(), the individual search steps are public so tests can
/// drive the engine through a chosen decision sequence.
class Solver {
public:
  explicit Solver(const Formula& formula, SolverConfig config = {});

  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  void set_observer(SearchObserver* observer) { observer_ = observer; }
  /// The writer must outlive the solve. Original clauses are not logged.
  void set_proof(ProofWriter* proof) { proof_ = proof; }

  SolveResult solve(const Budget& budget = {});

  // --- search steps ---------------------------------------------------------

  /// Unit propagation to fixpoint. Returns the conflicting clause, if any.
  std::optional<ClauseRef> propagate();
  /// 1-UIP analysis of a conflict at decision level >= 1. Bumps the
  /// activities of the variables involved and increments #c.
  ConflictAnalysis analyze_conflict(ClauseRef conflict);
  /// Picks the unassigned variable of highest activity (lowest index on
  /// ties) with its saved phase, and opens a new decision level with it.
  /// Returns nullopt when every variable is assigned.
  std::optional<Lit> decide();
  /// Opens a new decision level assigning `decision`, which must be unassigned.
  void assign_decision(Lit decision);
  /// Unassigns everything above `target_level`. No-op unless target is below
  /// the current level.
  void backtrack(uint32_t target_level);
  /// Backtracks to the assertion level and asserts learnt[0].
  ClauseRef learn(const ConflictAnalysis& analysis);
  /// Adds a learnt clause without asserting it (at least two literals).
  ClauseRef add_learnt_clause(std::vector<Lit> literals, uint32_t lbd);
  /// Deletes the worse half of the deletable learnt clauses. Clauses with
  /// lbd <= 2 and reasons of current assignments are kept.
  size_t reduce_db();
  [[nodiscard]] bool restart_due() const { return restarts_.should_restart(); }

  // --- inspection -----------------------------------------------------------

  [[nodiscard]] uint32_t num_vars() const { return num_vars_; }
  [[nodiscard]] LBool value(Var v) const { return assigns_[v.index]; }
  [[nodiscard]] LBool value(Lit l) const { return assigns_[l.var().index] ^ !l.positive(); }
  [[nodiscard]] uint32_t level(Var v) const { return level_[v.index]; }
  [[nodiscard]] std::optional<ClauseRef> reason(Var v) const;
  [[nodiscard]] uint32_t decision_level() const {
    return static_cast<uint32_t>(trail_lim_.size());
  }
  [[nodiscard]] std::span<const Lit> trail() const { return trail_; }
  [[nodiscard]] std::span<const size_t> level_starts() const { return trail_lim_; }
  [[nodiscard]] size_t propagation_head() const { return qhead_; }
  [[nodiscard]] bool saved_phase(Var v) const { return phase_[v.index]; }
  [[nodiscard]] const Clause& clause(ClauseRef c) const { return clauses_[c.index]; }
  [[nodiscard]] bool is_deleted(ClauseRef c) const { return deleted_[c.index]; }
  [[nodiscard]] size_t clause_store_size() const { return clauses_.size(); }
  [[nodiscard]] size_t num_learnts() const { return num_learnts_; }
  [[nodiscard]] size_t learnt_limit() const { return learnt_limit_; }
  [[nodiscard]] const SearchCounters& counters() const { return counters_; }
  [[nodiscard]] const ActivityTable& activities() const { return activity_; }
  [[nodiscard]] ActivityTable& activities() { return activity_; }
  [[nodiscard]] const GlueTracker& glue() const { return glue_; }
  [[nodiscard]] const MetricsAccumulator& metrics() const { return metrics_; }
  [[nodiscard]] const SolverConfig& config() const { return config_; }
  [[nodiscard]] const LubyRestarts& restart_policy() const { return restarts_; }
  /// False once a conflict at level 0 has been derived.
  [[nodiscard]] bool consistent() const { return ok_; }

  /// Every attached clause of length >= 2 is satisfied or has both watched
  /// literals non-false, and the watch lists match the clause heads.
  [[nodiscard]] bool watches_consistent() const;
  /// Every reason clause is unit under the trail prefix preceding its
  /// literal, and levels are consistent with the trail.
  [[nodiscard]] bool trail_consistent() const;

private:
  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };

  void assign(Lit l, std::optional<ClauseRef> reason);
  ClauseRef store(Clause clause);
  void attach(ClauseRef c);
  void bump_clause(Clause& c);
  bool locked(ClauseRef c) const;
  void purge_watches();
  SolveResult finish(Verdict verdict);

  static constexpr uint32_t kNoReason = UINT32_MAX;

  SolverConfig config_;
  uint32_t num_vars_;
  std::vector<Clause> clauses_;
  std::vector<bool> deleted_;
  size_t num_learnts_ = 0;
  size_t learnt_limit_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<LBool> assigns_;
  std::vector<uint32_t> level_;
  std::vector<uint32_t> reason_;
  std::vector<bool> phase_;
  std::vector<Lit> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;
  std::vector<char> seen_;

  ActivityTable activity_;
  double clause_increment_ = 1.0;
  GlueTracker glue_;
  MetricsAccumulator metrics_;
  LubyRestarts restarts_;
  SearchCounters counters_;
  std::mt19937_64 rng_;

  bool ok_ = true;
  bool empty_clause_in_input_ = false;
  SearchObserver* observer_ = nullptr;
  ProofWriter* proof_ = nullptr;
};

/// Independent model check: every clause has a true literal.
[[nodiscard]] bool model_satisfies(const Formula& formula, const std::vector<bool>& model);

/// Convenience wrapper: builds a solver and solves.
[[nodiscard]] SolveResult solve(const Formula& formula, const SolverConfig& config = {},
                                const Budget& budget = {}, ProofWriter* proof = nullptr);

} // namespace gbsat
