#include "gbsat/solver.hpp"

#include "gbsat/lbd.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace gbsat {

Solver::Solver(const Formula& formula, SolverConfig config)
    : config_(config), num_vars_(formula.num_vars),
      learnt_limit_(config.learnt_limit_initial), watches_(2 * size_t{formula.num_vars}),
      assigns_(formula.num_vars, LBool::Undef), level_(formula.num_vars, 0),
      reason_(formula.num_vars, kNoReason), phase_(formula.num_vars, false),
      seen_(formula.num_vars, 0),
      activity_(formula.num_vars, config.var_decay, config.var_initial_increment),
      glue_(config.glue_tracking ? formula.num_vars : 0, config.glue_bump, config.glue_lbd),
      restarts_(config.restart_base), rng_(config.seed) {
  trail_.reserve(num_vars_);
  for (uint32_t v = 0; v < num_vars_; ++v) activity_.insert(Var(v));

  for (const Clause& input : formula.clauses) {
    if (input.literals.empty()) {
      empty_clause_in_input_ = true;
      ok_ = false;
      continue;
    }
    Clause c;
    c.literals = input.literals;
    ClauseRef ref = store(std::move(c));
    if (clauses_[ref.index].size() >= 2) {
      attach(ref);
      continue;
    }
    Lit unit = clauses_[ref.index].literals[0];
    if (value(unit) == LBool::False)
      ok_ = false;
    else if (value(unit) == LBool::Undef)
      assign(unit, ref);
  }
}

std::optional<ClauseRef> Solver::reason(Var v) const {
  if (reason_[v.index] == kNoReason) return std::nullopt;
  return ClauseRef{reason_[v.index]};
}

ClauseRef Solver::store(Clause clause) {
  ClauseRef ref{static_cast<uint32_t>(clauses_.size())};
  clauses_.push_back(std::move(clause));
  deleted_.push_back(false);
  return ref;
}

void Solver::attach(ClauseRef c) {
  const auto& lits = clauses_[c.index].literals;
  assert(lits.size() >= 2);
  watches_[lits[0].code()].push_back({c, lits[1]});
  watches_[lits[1].code()].push_back({c, lits[0]});
}

void Solver::assign(Lit l, std::optional<ClauseRef> reason) {
  const uint32_t v = l.var().index;
  assert(assigns_[v] == LBool::Undef);
  assigns_[v] = l.positive() ? LBool::True : LBool::False;
  level_[v] = decision_level();
  reason_[v] = reason ? reason->index : kNoReason;
  trail_.push_back(l);
  activity_.remove(l.var());
  if (reason) {
    ++counters_.propagations;
    metrics_.record_propagation();
    if (observer_ != nullptr) observer_->on_propagation(l, *reason);
  }
}

void Solver::assign_decision(Lit decision) {
  trail_lim_.push_back(trail_.size());
  ++counters_.decisions;
  const bool is_glue = config_.glue_tracking && glue_.is_glue(decision.var());
  metrics_.record_decision(is_glue);
  if (observer_ != nullptr) observer_->on_decision(decision, is_glue);
  assign(decision, std::nullopt);
}

std::optional<Lit> Solver::decide() {
  if (activity_.heap_empty()) return std::nullopt;
  Var next = *activity_.top();
  if (config_.random_decision_freq > 0.0 &&
      std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < config_.random_decision_freq) {
    auto heap = activity_.heap_contents();
    next = Var(heap[std::uniform_int_distribution<size_t>(0, heap.size() - 1)(rng_)]);
  }
  Lit decision(next, phase_[next.index]);
  assign_decision(decision);
  return decision;
}

std::optional<ClauseRef> Solver::propagate() {
  std::optional<ClauseRef> conflict;
  while (qhead_ < trail_.size() && !conflict) {
    const Lit false_lit = ~trail_[qhead_++];
    auto& ws = watches_[false_lit.code()];
    size_t i = 0;
    size_t j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (value(w.blocker) == LBool::True) {
        ws[j++] = w;
        continue;
      }
      auto& lits = clauses_[w.cref.index].literals;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == LBool::True) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != LBool::False) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1].code()].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == LBool::False) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        assign(first, w.cref);
      }
    }
    ws.resize(j);
  }
  if (observer_ != nullptr) observer_->on_propagate_done(conflict.has_value());
  return conflict;
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_increment_;
  if (c.activity > 1e20) {
    for (Clause& other : clauses_)
      if (other.learnt) other.activity *= 1e-20;
    clause_increment_ *= 1e-20;
  }
}

ConflictAnalysis Solver::analyze_conflict(ClauseRef conflict) {
  assert(decision_level() > 0);
  ConflictAnalysis out;
  out.learnt.emplace_back(); // slot for the asserting literal
  const uint32_t conflict_level = decision_level();
  int open = 0;
  std::optional<Lit> resolved;
  size_t index = trail_.size();
  ClauseRef current = conflict;

  for (;;) {
    Clause& c = clauses_[current.index];
    if (c.learnt) bump_clause(c);
    for (Lit q : c.literals) {
      if (resolved && q == *resolved) continue;
      const uint32_t v = q.var().index;
      if (seen_[v] != 0 || level_[v] == 0) continue;
      seen_[v] = 1;
      activity_.bump(q.var());
      if (level_[v] >= conflict_level)
        ++open;
      else
        out.learnt.push_back(q);
    }
    do {
      --index;
    } while (seen_[trail_[index].var().index] == 0);
    resolved = trail_[index];
    seen_[resolved->var().index] = 0;
    if (--open == 0) break;
    current = ClauseRef{reason_[resolved->var().index]};
  }
  out.learnt[0] = ~*resolved;
  for (size_t k = 1; k < out.learnt.size(); ++k) seen_[out.learnt[k].var().index] = 0;

  if (out.learnt.size() > 1) {
    size_t max_k = 1;
    for (size_t k = 2; k < out.learnt.size(); ++k)
      if (level_[out.learnt[k].var().index] > level_[out.learnt[max_k].var().index]) max_k = k;
    std::swap(out.learnt[1], out.learnt[max_k]);
    out.assertion_level = level_[out.learnt[1].var().index];
  }
  out.lbd = compute_lbd(out.learnt, [this](Var v) -> std::optional<uint32_t> {
    if (assigns_[v.index] == LBool::Undef) return std::nullopt;
    return level_[v.index];
  });
  ++counters_.conflicts;
  metrics_.record_conflict(out.lbd);
  return out;
}

void Solver::backtrack(uint32_t target_level) {
  if (target_level >= decision_level()) return;
  const size_t keep = trail_lim_[target_level];
  for (size_t i = trail_.size(); i-- > keep;) {
    const Lit l = trail_[i];
    const Var v = l.var();
    assigns_[v.index] = LBool::Undef;
    reason_[v.index] = kNoReason;
    phase_[v.index] = l.positive();
    const double before = activity_.activity(v);
    if (config_.glue_tracking) glue_.on_unassigned(v, activity_);
    if (observer_ != nullptr) observer_->on_unassign(v, before, activity_.activity(v));
    activity_.insert(v);
  }
  trail_.resize(keep);
  trail_lim_.resize(target_level);
  qhead_ = std::min(qhead_, trail_.size());
  metrics_.on_backtrack(target_level);
}

ClauseRef Solver::learn(const ConflictAnalysis& analysis) {
  const bool glue = config_.glue_lbd.contains(analysis.lbd);
  if (proof_ != nullptr) proof_->add(analysis.learnt);
  if (glue) {
    ++counters_.glue_clauses;
    // Glue levels must be current before the asserting literal is assigned.
    if (config_.glue_tracking) glue_.on_glue_clause_learned(analysis.learnt, analysis.lbd);
  }
  if (observer_ != nullptr) observer_->on_learn(analysis, glue);
  backtrack(analysis.assertion_level);

  Clause c;
  c.literals = analysis.learnt;
  c.learnt = true;
  c.lbd = analysis.lbd;
  c.glue = glue;
  ClauseRef ref = store(std::move(c));
  ++num_learnts_;
  bump_clause(clauses_[ref.index]);
  if (clauses_[ref.index].size() >= 2) attach(ref);
  assign(analysis.learnt[0], ref);
  return ref;
}

ClauseRef Solver::add_learnt_clause(std::vector<Lit> literals, uint32_t lbd) {
  assert(literals.size() >= 2);
  Clause c;
  c.literals = std::move(literals);
  c.learnt = true;
  c.lbd = lbd;
  c.glue = config_.glue_lbd.contains(lbd);
  ClauseRef ref = store(std::move(c));
  ++num_learnts_;
  attach(ref);
  return ref;
}

bool Solver::locked(ClauseRef c) const {
  const auto& lits = clauses_[c.index].literals;
  if (lits.empty()) return false;
  const Lit first = lits[0];
  return value(first) == LBool::True && reason_[first.var().index] == c.index;
}

size_t Solver::reduce_db() {
  std::vector<ClauseRef> candidates;
  for (uint32_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    if (!c.learnt || deleted_[i] || c.lbd <= 2 || locked(ClauseRef{i})) continue;
    candidates.push_back(ClauseRef{i});
  }
  std::sort(candidates.begin(), candidates.end(), [this](ClauseRef a, ClauseRef b) {
    const Clause& ca = clauses_[a.index];
    const Clause& cb = clauses_[b.index];
    if (ca.lbd != cb.lbd) return ca.lbd < cb.lbd;
    if (ca.activity != cb.activity) return ca.activity > cb.activity;
    return a < b;
  });
  const size_t remove = candidates.size() / 2;
  for (size_t k = candidates.size() - remove; k < candidates.size(); ++k) {
    const ClauseRef ref = candidates[k];
    Clause& c = clauses_[ref.index];
    if (proof_ != nullptr) proof_->remove(c.literals);
    if (observer_ != nullptr) observer_->on_delete(c);
    deleted_[ref.index] = true;
    c.literals.clear();
    c.literals.shrink_to_fit();
  }
  if (remove > 0) purge_watches();
  num_learnts_ -= remove;
  ++counters_.reductions;
  counters_.deleted_clauses += remove;
  return remove;
}

void Solver::purge_watches() {
  for (auto& ws : watches_)
    std::erase_if(ws, [this](const Watcher& w) { return deleted_[w.cref.index]; });
}

SolveResult Solver::finish(Verdict verdict) {
  SolveResult result;
  result.verdict = verdict;
  if (verdict == Verdict::Sat) {
    result.model.resize(num_vars_);
    for (uint32_t v = 0; v < num_vars_; ++v) result.model[v] = assigns_[v] == LBool::True;
  }
  if (proof_ != nullptr) proof_->flush();
  result.counters = counters_;
  result.metrics = finalize_report(metrics_, counters_, glue_, num_vars_);
  return result;
}

SolveResult Solver::solve(const Budget& budget) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto root_conflict = [this] {
    ++counters_.conflicts;
    metrics_.record_conflict(std::nullopt);
    ok_ = false;
    if (proof_ != nullptr) proof_->add({});
    return finish(Verdict::Unsat);
  };
  if (!ok_) return root_conflict();
  if (budget.max_conflicts && *budget.max_conflicts == 0) return finish(Verdict::Unknown);

  for (;;) {
    std::optional<ClauseRef> conflict = propagate();
    if (!conflict) {
      if (!decide()) return finish(Verdict::Sat);
      continue;
    }
    if (decision_level() == 0) return root_conflict();

    learn(analyze_conflict(*conflict));
    activity_.decay();
    clause_increment_ /= config_.clause_decay;
    restarts_.on_conflict();
    if (config_.gf_sample_interval != 0 && counters_.conflicts % config_.gf_sample_interval == 0)
      metrics_.sample_gf(counters_.conflicts, glue_.glue_var_count(), num_vars_);

    if (budget.max_conflicts && counters_.conflicts >= *budget.max_conflicts)
      return finish(Verdict::Unknown);
    if (budget.time_limit_seconds &&
        std::chrono::duration<double>(Clock::now() - start).count() >= *budget.time_limit_seconds)
      return finish(Verdict::Unknown);

    if (config_.restarts && restarts_.should_restart()) {
      restarts_.on_restart();
      ++counters_.restarts;
      backtrack(0);
      if (observer_ != nullptr) observer_->on_restart();
    }
    if (config_.reduce_db && num_learnts_ > learnt_limit_) {
      reduce_db();
      learnt_limit_ += config_.learnt_limit_increment;
    }
  }
}

bool Solver::watches_consistent() const {
  auto watched_by = [this](Lit l, ClauseRef c) {
    const auto& ws = watches_[l.code()];
    return std::any_of(ws.begin(), ws.end(), [c](const Watcher& w) { return w.cref == c; });
  };
  for (uint32_t i = 0; i < clauses_.size(); ++i) {
    const auto& lits = clauses_[i].literals;
    if (deleted_[i] || lits.size() < 2) continue;
    const ClauseRef ref{i};
    if (!watched_by(lits[0], ref) || !watched_by(lits[1], ref)) return false;
    const bool satisfied = std::any_of(lits.begin(), lits.end(),
                                       [this](Lit l) { return value(l) == LBool::True; });
    if (!satisfied && (value(lits[0]) == LBool::False || value(lits[1]) == LBool::False))
      return false;
  }
  for (uint32_t code = 0; code < watches_.size(); ++code) {
    for (const Watcher& w : watches_[code]) {
      if (deleted_[w.cref.index]) return false;
      const auto& lits = clauses_[w.cref.index].literals;
      if (lits[0].code() != code && lits[1].code() != code) return false;
    }
  }
  return true;
}

bool Solver::trail_consistent() const {
  std::vector<size_t> position(num_vars_, SIZE_MAX);
  uint32_t lvl = 0;
  for (size_t i = 0; i < trail_.size(); ++i) {
    while (lvl < trail_lim_.size() && trail_lim_[lvl] <= i) ++lvl;
    const Lit l = trail_[i];
    if (value(l) != LBool::True || level_[l.var().index] != lvl) return false;
    position[l.var().index] = i;
  }
  for (size_t k = 1; k < trail_lim_.size(); ++k)
    if (trail_lim_[k] < trail_lim_[k - 1]) return false;
  if (qhead_ > trail_.size()) return false;
  for (size_t i = 0; i < trail_.size(); ++i) {
    const Lit l = trail_[i];
    const uint32_t r = reason_[l.var().index];
    if (r == kNoReason) continue;
    bool contains = false;
    for (Lit q : clauses_[r].literals) {
      if (q == l) {
        contains = true;
        continue;
      }
      if (value(q) != LBool::False || position[q.var().index] >= i) return false;
    }
    if (!contains) return false;
  }
  return true;
}

bool model_satisfies(const Formula& formula, const std::vector<bool>& model) {
  if (model.size() != formula.num_vars) return false;
  return std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const Clause& c) {
    return std::any_of(c.literals.begin(), c.literals.end(),
                       [&](Lit l) { return model[l.var().index] == l.positive(); });
  });
}

SolveResult solve(const Formula& formula, const SolverConfig& config, const Budget& budget,
                  ProofWriter* proof) {
  Solver solver(formula, config);
  solver.set_proof(proof);
  return solver.solve(budget);
}

} // namespace gbsat
