#include "gbsat/metrics.hpp"

#include "gbsat/glue_bump.hpp"

#include <cstdio>
#include <sstream>

namespace gbsat {

DecisionClassCounters& DecisionClassCounters::operator+=(const DecisionClassCounters& o) {
  decisions += o.decisions;
  propagations += o.propagations;
  conflicts += o.conflicts;
  lbd_sum += o.lbd_sum;
  lbd_count += o.lbd_count;
  return *this;
}

void MetricsAccumulator::record_decision(bool is_glue) {
  DecisionClass c = is_glue ? DecisionClass::Glue : DecisionClass::NonGlue;
  level_class_.push_back(c);
  ++current().decisions;
}

void MetricsAccumulator::on_backtrack(uint32_t target_level) {
  if (target_level < level_class_.size()) level_class_.resize(target_level);
}

void MetricsAccumulator::record_propagation() { ++current().propagations; }

void MetricsAccumulator::record_conflict(std::optional<uint32_t> lbd) {
  DecisionClassCounters& c = current();
  ++c.conflicts;
  if (lbd) {
    c.lbd_sum += *lbd;
    ++c.lbd_count;
  }
}

void MetricsAccumulator::sample_gf(uint64_t conflicts, uint32_t glue_vars, uint32_t num_vars) {
  double gf = num_vars == 0 ? 0.0 : static_cast<double>(glue_vars) / num_vars;
  samples_.push_back({conflicts, glue_vars, gf});
}

std::optional<DecisionClass> MetricsAccumulator::current_class() const {
  if (level_class_.empty()) return std::nullopt;
  return level_class_.back();
}

DecisionClassCounters& MetricsAccumulator::current() {
  if (level_class_.empty()) return preamble_;
  return level_class_.back() == DecisionClass::Glue ? glue_ : nonglue_;
}

void MetricsAccumulator::merge(const MetricsAccumulator& other) {
  glue_ += other.glue_;
  nonglue_ += other.nonglue_;
  preamble_ += other.preamble_;
}

namespace {

std::optional<double> ratio(uint64_t num, uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

ClassStats class_stats(const DecisionClassCounters& c) {
  return {c, ratio(c.propagations, c.decisions), ratio(c.conflicts, c.decisions),
          ratio(c.lbd_sum, c.lbd_count)};
}

} // namespace

MetricsReport finalize_report(const MetricsAccumulator& metrics, const SearchCounters& counters,
                              const GlueTracker& glue, uint32_t num_vars) {
  MetricsReport r;
  r.glue = class_stats(metrics.counters(DecisionClass::Glue));
  r.nonglue = class_stats(metrics.counters(DecisionClass::NonGlue));
  r.preamble = metrics.preamble();
  r.totals = counters;
  r.glue_var_count = glue.glue_var_count();
  r.num_vars = num_vars;
  r.gf_samples = metrics.gf_samples();
  if (num_vars > 0) {
    r.gf = static_cast<double>(r.glue_var_count) / num_vars;
    r.ngf = static_cast<double>(num_vars - r.glue_var_count) / num_vars;
    if (*r.gf > 0.0) r.r_g = static_cast<double>(r.glue.counts.decisions) / *r.gf;
    if (*r.ngf > 0.0) r.r_ng = static_cast<double>(r.nonglue.counts.decisions) / *r.ngf;
  }
  return r;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

double percent_excess(double larger, double smaller) { return (larger - smaller) / smaller * 100.0; }

std::string format_optional(const std::optional<double>& value) {
  if (!value) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *value);
  return buf;
}

std::string stats_csv_header() {
  return "schema,instance,config,verdict,wall_time_s,decisions,propagations,conflicts,"
         "glue_clauses,glue_decisions,nonglue_decisions,glue_pr,glue_lr,glue_albd,"
         "nonglue_pr,nonglue_lr,nonglue_albd,gf,ngf,r_g,r_ng,glue_vars,num_vars";
}

std::string stats_csv_row(const std::string& instance, const std::string& config,
                          Verdict verdict, double wall_time_s, const MetricsReport& r) {
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.6f", wall_time_s);
  std::ostringstream out;
  out << kStatsCsvVersion << ',' << csv_escape(instance) << ',' << csv_escape(config) << ','
      << to_string(verdict) << ',' << wall << ',' << r.totals.decisions << ',' << r.totals.propagations << ','
      << r.totals.conflicts << ',' << r.totals.glue_clauses << ',' << r.glue.counts.decisions
      << ',' << r.nonglue.counts.decisions << ',' << format_optional(r.glue.pr) << ','
      << format_optional(r.glue.lr) << ',' << format_optional(r.glue.avg_lbd) << ','
      << format_optional(r.nonglue.pr) << ',' << format_optional(r.nonglue.lr) << ','
      << format_optional(r.nonglue.avg_lbd) << ',' << format_optional(r.gf) << ','
      << format_optional(r.ngf) << ',' << format_optional(r.r_g) << ','
      << format_optional(r.r_ng) << ',' << r.glue_var_count << ',' << r.num_vars;
  return out.str();
}

} // namespace gbsat
