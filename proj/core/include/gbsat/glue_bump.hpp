#pragma once

#include "gbsat/activity.hpp"
#include "gbsat/types.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gbsat {

/// gl(v) / sum of gl over all glue variables. Always in [0, 1].
struct GlueCentrality {
  double value = 0.0;
};

class UndefinedCentrality : public std::domain_error {
public:
  UndefinedCentrality() : std::domain_error("glue centrality undefined: no glue clause learned") {}
};

/// Which learned-clause LBD values count as glue. The default is exactly 2.
struct GlueLbdRange {
  uint32_t min = 2;
  uint32_t max = 2;

  [[nodiscard]] bool contains(uint32_t lbd) const { return lbd >= min && lbd <= max; }
};

/// Tracks glue levels and applies the glue bump.
///
/// Glue level gl(v) counts the glue clauses learned so far that contain v.
/// A variable with gl(v) > 0 is a glue variable for the rest of the solve.
/// Learning a glue clause only updates the counts; the activity bump is
/// deferred until the variable is unassigned by backtracking, at which point
/// its activity is multiplied by (1 + gc(v)) using the counts at that moment.
class GlueTracker {
public:
  explicit GlueTracker(uint32_t num_vars, bool bump_enabled = false, GlueLbdRange range = {});

  /// Increments gl(v) for every variable of a newly learned glue clause. Must
  /// run before the clause's asserting literal is assigned. Throws
  /// std::invalid_argument if `lbd` is outside the glue range.
  void on_glue_clause_learned(std::span<const Lit> clause, uint32_t lbd);

  /// Applies the bump to a variable that was just unassigned and returns the
  /// amount added (0 when v is not a glue variable or bumping is disabled).
  double on_unassigned(Var v, ActivityTable& activities) const;

  /// Throws UndefinedCentrality when no glue clause has been learned.
  [[nodiscard]] GlueCentrality glue_centrality(Var v) const;

  [[nodiscard]] uint32_t glue_level(Var v) const { return glue_level_[v.index]; }
  [[nodiscard]] bool is_glue(Var v) const { return glue_level_[v.index] > 0; }
  [[nodiscard]] uint64_t total_glue_level() const { return total_glue_level_; }
  [[nodiscard]] uint64_t glue_clause_count() const { return glue_clauses_; }
  [[nodiscard]] uint32_t glue_var_count() const { return glue_vars_; }
  [[nodiscard]] uint32_t num_vars() const { return static_cast<uint32_t>(glue_level_.size()); }
  [[nodiscard]] std::span<const uint32_t> glue_levels() const { return glue_level_; }
  [[nodiscard]] bool bump_enabled() const { return bump_enabled_; }
  [[nodiscard]] const GlueLbdRange& lbd_range() const { return range_; }

private:
  std::vector<uint32_t> glue_level_;
  uint64_t total_glue_level_ = 0;
  uint64_t glue_clauses_ = 0;
  uint32_t glue_vars_ = 0;
  bool bump_enabled_;
  GlueLbdRange range_;
};

} // namespace gbsat
