#pragma once

#include "gbsat/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gbsat {

class GlueTracker;

/// Totals kept by the CDCL engine. All monotone over one solve.
struct SearchCounters {
  uint64_t decisions = 0;    // #d
  uint64_t propagations = 0; // #p, reason-bearing assignments
  uint64_t conflicts = 0;    // #c
  uint64_t glue_clauses = 0; // #g
  uint64_t restarts = 0;
  uint64_t reductions = 0;
  uint64_t deleted_clauses = 0;

  friend bool operator==(const SearchCounters&, const SearchCounters&) = default;
};

enum class DecisionClass { Glue, NonGlue };

struct DecisionClassCounters {
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t conflicts = 0;
  uint64_t lbd_sum = 0;
  uint64_t lbd_count = 0;

  DecisionClassCounters& operator+=(const DecisionClassCounters& o);
  friend DecisionClassCounters operator+(DecisionClassCounters a, const DecisionClassCounters& b) {
    return a += b;
  }
  friend bool operator==(const DecisionClassCounters&, const DecisionClassCounters&) = default;
};

/// Per-class rates. Each ratio is absent when its denominator is zero.
struct ClassStats {
  DecisionClassCounters counts;
  std::optional<double> pr;      // propagations / decisions
  std::optional<double> lr;      // conflicts / decisions
  std::optional<double> avg_lbd; // lbd_sum / lbd_count
};

struct GfSample {
  uint64_t conflicts = 0;
  uint32_t glue_vars = 0;
  double gf = 0.0;
};

struct MetricsReport {
  ClassStats glue;
  ClassStats nonglue;
  DecisionClassCounters preamble; // level-0 work, outside both classes
  std::optional<double> gf;
  std::optional<double> ngf;
  std::optional<double> r_g;  // #gd / GF
  std::optional<double> r_ng; // #ngd / NGF
  SearchCounters totals;
  uint32_t glue_var_count = 0;
  uint32_t num_vars = 0;
  std::vector<GfSample> gf_samples;
};

/// Accumulates per-decision-class statistics during search.
///
/// Attribution: a propagation or conflict is charged to the class of the
/// decision that opened the current decision level. Work at level 0 goes to
/// the preamble bucket. The accumulator mirrors the solver's level stack via
/// record_decision (push) and on_backtrack (truncate).
class MetricsAccumulator {
public:
  void record_decision(bool is_glue);
  void on_backtrack(uint32_t target_level);
  void record_propagation();
  /// `lbd` is absent for a conflict that produced no learned clause (level 0).
  void record_conflict(std::optional<uint32_t> lbd);
  void sample_gf(uint64_t conflicts, uint32_t glue_vars, uint32_t num_vars);

  [[nodiscard]] std::optional<DecisionClass> current_class() const;
  [[nodiscard]] const DecisionClassCounters& counters(DecisionClass c) const {
    return c == DecisionClass::Glue ? glue_ : nonglue_;
  }
  [[nodiscard]] const DecisionClassCounters& preamble() const { return preamble_; }
  [[nodiscard]] const std::vector<GfSample>& gf_samples() const { return samples_; }

  /// Sums counters of another accumulator (runs merged after completion).
  void merge(const MetricsAccumulator& other);

private:
  DecisionClassCounters& current();

  DecisionClassCounters glue_;
  DecisionClassCounters nonglue_;
  DecisionClassCounters preamble_;
  std::vector<DecisionClass> level_class_;
  std::vector<GfSample> samples_;
};

[[nodiscard]] MetricsReport finalize_report(const MetricsAccumulator& metrics,
                                            const SearchCounters& counters,
                                            const GlueTracker& glue, uint32_t num_vars);

/// (larger - smaller) / smaller * 100.
[[nodiscard]] double percent_excess(double larger, double smaller);

// Per-instance stats CSV. Undefined ratios are written as empty cells.
inline constexpr int kStatsCsvVersion = 1;
[[nodiscard]] std::string stats_csv_header();
[[nodiscard]] std::string stats_csv_row(const std::string& instance, const std::string& config,
                                        Verdict verdict, double wall_time_s,
                                        const MetricsReport& report);

/// Quotes a CSV field when it contains a comma, quote or newline.
[[nodiscard]] std::string csv_escape(const std::string& field);

/// Formats an optional ratio for CSV: empty when absent, otherwise %.10g.
[[nodiscard]] std::string format_optional(const std::optional<double>& value);

} // namespace gbsat
