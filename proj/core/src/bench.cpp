#include "gbsat/bench.hpp"

#include "gbsat/formula.hpp"

#include <json.hpp>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace gbsat::bench {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

RunConfig baseline_config(uint64_t seed) {
  RunConfig c{"baseline", {}};
  c.solver.glue_bump = false;
  c.solver.seed = seed;
  return c;
}

RunConfig glue_bump_config(uint64_t seed) {
  RunConfig c{"gb", {}};
  c.solver.glue_bump = true;
  c.solver.seed = seed;
  return c;
}

int64_t to_micros(double seconds) { return std::llround(seconds * 1e6); }

namespace {

double round_to_micros(double seconds) { return static_cast<double>(to_micros(seconds)) / 1e6; }

Verdict verdict_from_string(const std::string& s) {
  if (s == "SAT") return Verdict::Sat;
  if (s == "UNSAT") return Verdict::Unsat;
  return Verdict::Unknown;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json counts_json(const DecisionClassCounters& c) {
  return {c.decisions, c.propagations, c.conflicts, c.lbd_sum, c.lbd_count};
}
DecisionClassCounters counts_from(const json& j) {
  return {j[0].get<uint64_t>(), j[1].get<uint64_t>(), j[2].get<uint64_t>(),
          j[3].get<uint64_t>(), j[4].get<uint64_t>()};
}
json class_json(const ClassStats& s) {
  return {{"counts", counts_json(s.counts)},
          {"pr", optional_json(s.pr)},
          {"lr", optional_json(s.lr)},
          {"albd", optional_json(s.avg_lbd)}};
}
ClassStats class_from(const json& j) {
  return {counts_from(j["counts"]), optional_from(j["pr"]), optional_from(j["lr"]),
          optional_from(j["albd"])};
}

json record_json(const RunRecord& r) {
  const MetricsReport& m = r.metrics;
  const SearchCounters& t = m.totals;
  return {{"verdict", to_string(r.verdict)},
          {"wall", r.wall_time},
          {"errored", r.errored},
          {"error", r.error},
          {"glue", class_json(m.glue)},
          {"nonglue", class_json(m.nonglue)},
          {"preamble", counts_json(m.preamble)},
          {"gf", optional_json(m.gf)},
          {"ngf", optional_json(m.ngf)},
          {"r_g", optional_json(m.r_g)},
          {"r_ng", optional_json(m.r_ng)},
          {"totals",
           {t.decisions, t.propagations, t.conflicts, t.glue_clauses, t.restarts, t.reductions,
            t.deleted_clauses}},
          {"glue_vars", m.glue_var_count},
          {"num_vars", m.num_vars}};
}

void record_from(const json& j, RunRecord& r) {
  r.verdict = verdict_from_string(j["verdict"].get<std::string>());
  r.wall_time = j["wall"].get<double>();
  r.errored = j["errored"].get<bool>();
  r.error = j["error"].get<std::string>();
  MetricsReport& m = r.metrics;
  m.glue = class_from(j["glue"]);
  m.nonglue = class_from(j["nonglue"]);
  m.preamble = counts_from(j["preamble"]);
  m.gf = optional_from(j["gf"]);
  m.ngf = optional_from(j["ngf"]);
  m.r_g = optional_from(j["r_g"]);
  m.r_ng = optional_from(j["r_ng"]);
  const json& t = j["totals"];
  m.totals = {t[0].get<uint64_t>(), t[1].get<uint64_t>(), t[2].get<uint64_t>(),
              t[3].get<uint64_t>(), t[4].get<uint64_t>(), t[5].get<uint64_t>(),
              t[6].get<uint64_t>()};
  m.glue_var_count = j["glue_vars"].get<uint32_t>();
  m.num_vars = j["num_vars"].get<uint32_t>();
}

RunRecord errored_record(const std::string& path, const RunConfig& config, double timeout,
                         std::string error) {
  RunRecord r;
  r.instance = path;
  r.config = config.id;
  r.timeout = timeout;
  r.errored = true;
  r.error = std::move(error);
  return r;
}

void write_all(int fd, const std::string& data) {
  size_t written = 0;
  while (written < data.size()) {
    ssize_t n = ::write(fd, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      return;
    }
    written += static_cast<size_t>(n);
  }
}

struct Worker {
  pid_t pid = -1;
  int fd = -1;
  size_t job = 0;
  Clock::time_point started;
  std::string output;
  bool eof = false;
};

} // namespace

std::vector<std::string> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    size_t last = line.find_last_not_of(" \t\r");
    std::filesystem::path p = line.substr(first, last - first + 1);
    if (p.is_relative() && !base.empty()) p = base / p;
    out.push_back(p.string());
  }
  return out;
}

RunRecord run_instance(const std::string& path, const RunConfig& config,
                       const CorpusOptions& options) {
  const auto start = Clock::now();
  try {
    Formula formula = parse_dimacs_file(path);
    Budget budget;
    budget.max_conflicts = options.max_conflicts;
    budget.time_limit_seconds = options.timeout;
    SolveResult result = solve(formula, config.solver, budget);
    RunRecord r;
    r.instance = path;
    r.config = config.id;
    r.verdict = result.verdict;
    r.timeout = options.timeout;
    r.metrics = std::move(result.metrics);
    r.wall_time = round_to_micros(std::chrono::duration<double>(Clock::now() - start).count());
    if (r.verdict == Verdict::Sat && !model_satisfies(formula, result.model)) {
      r.errored = true;
      r.error = "model check failed";
    }
    return r;
  } catch (const std::exception& e) {
    return errored_record(path, config, options.timeout, e.what());
  }
}

CorpusResult run_corpus(const std::vector<std::string>& instances,
                        const std::vector<RunConfig>& configs, const CorpusOptions& options) {
  struct Job {
    std::string path;
    const RunConfig* config;
  };
  std::vector<Job> jobs;
  for (const auto& path : instances)
    for (const auto& config : configs) jobs.push_back({path, &config});

  CorpusResult result;
  result.records.resize(jobs.size());
  std::vector<bool> skip(jobs.size(), false);
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!std::filesystem::exists(jobs[i].path)) {
      result.records[i] =
          errored_record(jobs[i].path, *jobs[i].config, options.timeout, "missing instance file");
      skip[i] = true;
    }
  }

  if (!options.isolate) {
    for (size_t i = 0; i < jobs.size(); ++i)
      if (!skip[i]) result.records[i] = run_instance(jobs[i].path, *jobs[i].config, options);
  } else {
    const unsigned max_workers = std::max(1U, options.jobs);
    const auto hard_limit = std::chrono::duration<double>(options.timeout + options.grace);
    std::vector<Worker> running;
    size_t next = 0;
    auto launch = [&](size_t i) {
      int fds[2];
      if (::pipe(fds) != 0) {
        result.records[i] = errored_record(jobs[i].path, *jobs[i].config, options.timeout,
                                           "pipe() failed");
        return;
      }
      std::fflush(nullptr);
      pid_t pid = ::fork();
      if (pid < 0) {
        ::close(fds[0]);
        ::close(fds[1]);
        result.records[i] = errored_record(jobs[i].path, *jobs[i].config, options.timeout,
                                           "fork() failed");
        return;
      }
      if (pid == 0) {
        ::close(fds[0]);
        RunRecord r = run_instance(jobs[i].path, *jobs[i].config, options);
        write_all(fds[1], record_json(r).dump());
        ::close(fds[1]);
        ::_exit(0);
      }
      ::close(fds[1]);
      Worker w;
      w.pid = pid;
      w.fd = fds[0];
      w.job = i;
      w.started = Clock::now();
      running.push_back(std::move(w));
    };
    auto complete = [&](Worker& w, bool killed) {
      int status = 0;
      ::waitpid(w.pid, &status, 0);
      ::close(w.fd);
      const Job& job = jobs[w.job];
      RunRecord& r = result.records[w.job];
      r.instance = job.path;
      r.config = job.config->id;
      r.timeout = options.timeout;
      const double elapsed =
          round_to_micros(std::chrono::duration<double>(Clock::now() - w.started).count());
      if (killed) {
        r.verdict = Verdict::Unknown;
        r.killed = true;
        r.wall_time = elapsed;
        return;
      }
      try {
        record_from(json::parse(w.output), r);
      } catch (const std::exception&) {
        r = errored_record(job.path, *job.config, options.timeout,
                           "worker exited without a result (status " + std::to_string(status) +
                               ")");
      }
    };

    while (next < jobs.size() || !running.empty()) {
      while (running.size() < max_workers && next < jobs.size()) {
        if (!skip[next]) launch(next);
        ++next;
      }
      if (running.empty()) continue;
      std::vector<pollfd> fds;
      for (const Worker& w : running) fds.push_back({w.fd, POLLIN, 0});
      ::poll(fds.data(), fds.size(), 50);
      for (size_t k = 0; k < running.size(); ++k) {
        if ((fds[k].revents & (POLLIN | POLLHUP | POLLERR)) == 0) continue;
        char buf[4096];
        ssize_t n = ::read(running[k].fd, buf, sizeof buf);
        if (n > 0)
          running[k].output.append(buf, static_cast<size_t>(n));
        else if (n == 0 || errno != EINTR)
          running[k].eof = true;
      }
      for (size_t k = running.size(); k-- > 0;) {
        Worker& w = running[k];
        bool killed = false;
        if (!w.eof && Clock::now() - w.started > hard_limit) {
          ::kill(w.pid, SIGKILL);
          killed = true;
        }
        if (w.eof || killed) {
          complete(w, killed);
          running.erase(running.begin() + static_cast<std::ptrdiff_t>(k));
        }
      }
    }
  }

  std::vector<std::string> order;
  for (const auto& c : configs) order.push_back(c.id);
  for (const RunRecord& r : result.records)
    if (r.errored)
      result.warnings.push_back(r.instance + " [" + r.config + "]: " + r.error +
                                " (excluded from PAR-2)");
  result.summary = summarize(result.records, order);
  if (configs.size() >= 2)
    result.series = solved_difference_series(result.records, configs.front().id,
                                             configs.back().id, options.timeout,
                                             options.series_points);
  result.contradictions = find_contradictions(result.records);
  return result;
}

std::vector<ConfigSummary> summarize(const std::vector<RunRecord>& records,
                                     const std::vector<std::string>& config_order) {
  std::vector<ConfigSummary> out;
  for (const auto& id : config_order) {
    ConfigSummary s;
    s.config = id;
    for (const RunRecord& r : records) {
      if (r.config != id) continue;
      if (r.errored) {
        ++s.errored;
        continue;
      }
      if (r.solved()) {
        (r.verdict == Verdict::Sat ? s.solved_sat : s.solved_unsat)++;
        s.par2_micros += to_micros(r.wall_time);
      } else {
        ++s.unsolved;
        s.par2_micros += 2 * to_micros(r.timeout);
      }
    }
    out.push_back(s);
  }
  return out;
}

std::vector<SeriesPoint> solved_difference_series(const std::vector<RunRecord>& records,
                                                  const std::string& baseline,
                                                  const std::string& candidate, double timeout,
                                                  size_t points) {
  std::vector<SeriesPoint> series;
  if (points == 0) return series;
  for (size_t k = 0; k < points; ++k) {
    const double t = points == 1 ? timeout : timeout * static_cast<double>(k) /
                                                 static_cast<double>(points - 1);
    int64_t diff = 0;
    for (const RunRecord& r : records) {
      if (!r.solved() || r.wall_time > t) continue;
      if (r.config == candidate) ++diff;
      if (r.config == baseline) --diff;
    }
    series.push_back({t, diff});
  }
  return series;
}

std::vector<std::string> find_contradictions(const std::vector<RunRecord>& records) {
  std::map<std::string, std::set<Verdict>> verdicts;
  for (const RunRecord& r : records)
    if (r.solved()) verdicts[r.instance].insert(r.verdict);
  std::vector<std::string> out;
  for (const auto& [instance, set] : verdicts)
    if (set.size() > 1) out.push_back(instance);
  return out;
}

std::string records_csv_header() { return stats_csv_header() + ",timeout_s,status,error"; }

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << records_csv_header() << '\n';
  char timeout[64];
  for (const RunRecord& r : records) {
    std::snprintf(timeout, sizeof timeout, "%.6f", r.timeout);
    const char* status = r.errored ? "error" : (r.killed ? "killed" : "ok");
    out << stats_csv_row(r.instance, r.config, r.verdict, r.wall_time, r.metrics) << ','
        << timeout << ',' << status << ',' << csv_escape(r.error) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ConfigSummary>& summary) {
  out << "config,solved_sat,solved_unsat,unsolved,errored,par2_sum_s\n";
  char par2[64];
  for (const ConfigSummary& s : summary) {
    std::snprintf(par2, sizeof par2, "%lld.%06lld",
                  static_cast<long long>(s.par2_micros / 1000000),
                  static_cast<long long>(s.par2_micros % 1000000));
    out << csv_escape(s.config) << ',' << s.solved_sat << ',' << s.solved_unsat << ','
        << s.unsolved << ',' << s.errored << ',' << par2 << '\n';
  }
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series) {
  out << "t,solved_diff\n";
  char t[64];
  for (const SeriesPoint& p : series) {
    std::snprintf(t, sizeof t, "%.6f", p.time);
    out << t << ',' << p.solved_difference << '\n';
  }
}

namespace {

void write_model(std::ostream& out, const std::vector<bool>& model) {
  std::string line = "v";
  for (size_t v = 0; v < model.size(); ++v) {
    std::string lit = ' ' + std::to_string(model[v] ? static_cast<long long>(v + 1)
                                                    : -static_cast<long long>(v + 1));
    if (line.size() + lit.size() > 78) {
      out << line << '\n';
      line = "v";
    }
    line += lit;
  }
  out << line << " 0\n";
}

} // namespace

int run_single(const SingleRunOptions& options, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  Formula formula;
  std::vector<std::string> warnings;
  try {
    formula = parse_dimacs_file(options.path, &warnings);
  } catch (const std::exception& e) {
    err << "error: " << options.path << ": " << e.what() << '\n';
    return 1;
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';

  std::ofstream proof_file;
  std::optional<ProofWriter> proof;
  if (options.proof_path) {
    proof_file.open(*options.proof_path);
    if (!proof_file) {
      err << "error: cannot write proof to '" << *options.proof_path << "'\n";
      return 1;
    }
    proof.emplace(proof_file);
  }

  SolveResult result;
  try {
    Solver solver(formula, options.config.solver);
    if (proof) solver.set_proof(&*proof);
    result = solver.solve(options.budget);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const double wall = round_to_micros(std::chrono::duration<double>(Clock::now() - start).count());

  const SearchCounters& c = result.counters;
  out << "c config " << options.config.id << '\n'
      << "c decisions " << c.decisions << " propagations " << c.propagations << " conflicts "
      << c.conflicts << " glue_clauses " << c.glue_clauses << '\n'
      << "c glue_decisions " << result.metrics.glue.counts.decisions << " nonglue_decisions "
      << result.metrics.nonglue.counts.decisions << " glue_vars "
      << result.metrics.glue_var_count << '/' << result.metrics.num_vars << '\n';

  if (options.stats_csv_path) {
    std::ofstream csv(*options.stats_csv_path);
    csv << stats_csv_header() << '\n'
        << stats_csv_row(options.path, options.config.id, result.verdict, wall, result.metrics)
        << '\n';
    if (!csv) {
      err << "error: cannot write stats to '" << *options.stats_csv_path << "'\n";
      return 1;
    }
  }
  if (options.gf_series_path) {
    std::ofstream gf(*options.gf_series_path);
    gf << "conflicts,glue_vars,gf\n";
    for (const GfSample& s : result.metrics.gf_samples)
      gf << s.conflicts << ',' << s.glue_vars << ',' << format_optional(s.gf) << '\n';
  }

  switch (result.verdict) {
  case Verdict::Sat:
    out << "s SATISFIABLE\n";
    if (options.print_model) write_model(out, result.model);
    return 10;
  case Verdict::Unsat:
    out << "s UNSATISFIABLE\n";
    return 20;
  case Verdict::Unknown:
    out << "s UNKNOWN\n";
    return 0;
  }
  return 0;
}

} // namespace gbsat::bench
