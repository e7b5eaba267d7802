#include "gbsat/glue_bump.hpp"

namespace gbsat {

GlueTracker::GlueTracker(uint32_t num_vars, bool bump_enabled, GlueLbdRange range)
    : glue_level_(num_vars, 0), bump_enabled_(bump_enabled), range_(range) {}

void GlueTracker::on_glue_clause_learned(std::span<const Lit> clause, uint32_t lbd) {
  if (!range_.contains(lbd))
    throw std::invalid_argument("on_glue_clause_learned: lbd " + std::to_string(lbd) +
                                " is not a glue lbd");
  for (Lit l : clause) {
    uint32_t& gl = glue_level_[l.var().index];
    if (gl++ == 0) ++glue_vars_;
  }
  total_glue_level_ += clause.size();
  ++glue_clauses_;
}

double GlueTracker::on_unassigned(Var v, ActivityTable& activities) const {
  if (!bump_enabled_ || glue_level_[v.index] == 0) return 0.0;
  const double gc = glue_centrality(v).value;
  const double bf = activities.activity(v) * gc;
  activities.bump(v, bf);
  return bf;
}

GlueCentrality GlueTracker::glue_centrality(Var v) const {
  if (total_glue_level_ == 0) throw UndefinedCentrality();
  return {static_cast<double>(glue_level_[v.index]) / static_cast<double>(total_glue_level_)};
}

} // namespace gbsat
