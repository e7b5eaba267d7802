#pragma once

#include "gbsat/metrics.hpp"
#include "gbsat/solver.hpp"
#include "gbsat/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gbsat::bench {

struct RunConfig {
  std::string id;
  SolverConfig solver;
};

/// The two configurations compared by the harness.
[[nodiscard]] RunConfig baseline_config(uint64_t seed = 0);
[[nodiscard]] RunConfig glue_bump_config(uint64_t seed = 0);

struct RunRecord {
  std::string instance;
  std::string config;
  Verdict verdict = Verdict::Unknown;
  double wall_time = 0.0; // seconds, microsecond resolution
  double timeout = 0.0;
  bool errored = false;
  bool killed = false; // hard wall-clock kill by the harness
  std::string error;
  MetricsReport metrics;

  [[nodiscard]] bool solved() const {
    return !errored && (verdict == Verdict::Sat || verdict == Verdict::Unsat);
  }
};

struct ConfigSummary {
  std::string config;
  uint32_t solved_sat = 0;
  uint32_t solved_unsat = 0;
  uint32_t unsolved = 0;
  uint32_t errored = 0;
  /// Sum over instances of wall time if solved, else 2 x timeout. Kept in
  /// integer microseconds so the sum is exact.
  int64_t par2_micros = 0;

  [[nodiscard]] double par2_seconds() const { return static_cast<double>(par2_micros) / 1e6; }
};

struct SeriesPoint {
  double time = 0.0;
  int64_t solved_difference = 0; // solved(candidate, <= t) - solved(baseline, <= t)
};

struct CorpusOptions {
  double timeout = 60.0;
  std::optional<uint64_t> max_conflicts;
  unsigned jobs = 1;
  double grace = 5.0;
  /// Run each solve in a forked worker with a hard kill at timeout + grace.
  bool isolate = true;
  size_t series_points = 101;
};

struct CorpusResult {
  std::vector<RunRecord> records; // instance-major, configs in given order
  std::vector<ConfigSummary> summary;
  std::vector<SeriesPoint> series; // last config vs first config
  std::vector<std::string> contradictions;
  std::vector<std::string> warnings;
};

[[nodiscard]] int64_t to_micros(double seconds);

/// One instance path per line; blank lines and '#' comments are skipped.
/// Relative paths resolve against the manifest's directory.
[[nodiscard]] std::vector<std::string> read_manifest(const std::string& path);

/// Parses and solves one instance in-process. Never throws: failures are
/// recorded as errored records.
[[nodiscard]] RunRecord run_instance(const std::string& path, const RunConfig& config,
                                     const CorpusOptions& options);

[[nodiscard]] CorpusResult run_corpus(const std::vector<std::string>& instances,
                                      const std::vector<RunConfig>& configs,
                                      const CorpusOptions& options);

/// Errored records are left out of PAR-2 and counted separately.
[[nodiscard]] std::vector<ConfigSummary> summarize(const std::vector<RunRecord>& records,
                                                   const std::vector<std::string>& config_order);

[[nodiscard]] std::vector<SeriesPoint>
solved_difference_series(const std::vector<RunRecord>& records, const std::string& baseline,
                         const std::string& candidate, double timeout, size_t points);

/// Instances on which one config says SAT and another UNSAT.
[[nodiscard]] std::vector<std::string> find_contradictions(const std::vector<RunRecord>& records);

[[nodiscard]] std::string records_csv_header();
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<ConfigSummary>& summary);
void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series);

struct SingleRunOptions {
  std::string path;
  RunConfig config = baseline_config();
  Budget budget;
  std::optional<std::string> proof_path;
  std::optional<std::string> stats_csv_path;
  std::optional<std::string> gf_series_path;
  bool print_model = true;
};

/// SAT-competition style run: prints "s ..." and "v ..." lines and returns
/// 10 (SAT), 20 (UNSAT), 0 (UNKNOWN) or 1 on input/output errors.
int run_single(const SingleRunOptions& options, std::ostream& out, std::ostream& err);

} // namespace gbsat::bench
