// gbsat command-line front end: solve, bench, check, gen.

#include "gbsat/bench.hpp"
#include "gbsat/formula.hpp"
#include "gbsat/generators.hpp"
#include "gbsat/proof.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

gbsat::bench::RunConfig make_config(const std::string& glue_bump, uint64_t seed) {
  return glue_bump == "on" ? gbsat::bench::glue_bump_config(seed)
                           : gbsat::bench::baseline_config(seed);
}

int run_bench(const std::string& manifest, const gbsat::bench::CorpusOptions& options,
              uint64_t seed, const std::string& out_dir) {
  using namespace gbsat::bench;
  std::vector<std::string> instances;
  try {
    instances = read_manifest(manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  CorpusResult result =
      run_corpus(instances, {baseline_config(seed), glue_bump_config(seed)}, options);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream out(dir / "records.csv");
    write_records_csv(out, result.records);
  }
  {
    std::ofstream out(dir / "summary.csv");
    write_summary_csv(out, result.summary);
  }
  {
    std::ofstream out(dir / "series.csv");
    write_series_csv(out, result.series);
  }
  write_summary_csv(std::cout, result.summary);
  for (const auto& c : result.contradictions)
    std::cerr << "error: contradictory verdicts on " << c << '\n';
  return result.contradictions.empty() ? 0 : 2;
}

int run_gen(const std::string& kind, uint32_t n, double ratio, uint64_t seed, bool unsat,
            const std::string& out_path) {
  using namespace gbsat;
  if (kind == "corpus") {
    if (out_path.empty()) {
      std::cerr << "error: gen corpus needs --out <dir>\n";
      return 1;
    }
    std::filesystem::create_directories(out_path);
    std::ofstream manifest(std::filesystem::path(out_path) / "manifest.txt");
    for (const auto& item : gen::desk_corpus(4, seed)) {
      const std::string file = item.name + ".cnf";
      std::ofstream cnf(std::filesystem::path(out_path) / file);
      write_dimacs(cnf, item.formula);
      manifest << file << '\n';
    }
    return 0;
  }
  Formula f;
  if (kind == "random3")
    f = gen::random_ksat(n, static_cast<uint32_t>(n * ratio + 0.5), 3, seed);
  else if (kind == "php")
    f = gen::pigeonhole(n);
  else if (kind == "parity")
    f = gen::parity_chain(n, true, unsat);
  else if (kind == "unit")
    f = gen::unit_chain(n, unsat);
  else {
    std::cerr << "error: unknown generator '" << kind << "'\n";
    return 1;
  }
  if (out_path.empty()) {
    write_dimacs(std::cout, f);
  } else {
    std::ofstream out(out_path);
    write_dimacs(out, f);
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"gbsat: CDCL SAT solver with glue-variable bumping"};
  app.require_subcommand(1);

  std::string glue_bump = "off";
  double timeout = 0;
  uint64_t max_conflicts = 0;
  uint64_t seed = 0;

  auto* solve = app.add_subcommand("solve", "Solve one DIMACS CNF file");
  gbsat::bench::SingleRunOptions single;
  std::string proof_path, stats_path, gf_path;
  bool no_model = false;
  solve->add_option("file", single.path, "DIMACS CNF input")->required();
  solve->add_option("--glue-bump", glue_bump, "Glue bumping")
      ->check(CLI::IsMember({"on", "off"}));
  solve->add_option("--timeout", timeout, "Time limit in seconds (0 = none)");
  solve->add_option("--max-conflicts", max_conflicts, "Conflict budget (0 = none)");
  solve->add_option("--seed", seed, "Random seed");
  solve->add_option("--proof", proof_path, "Write a DRAT proof");
  solve->add_option("--stats-csv", stats_path, "Write the per-instance stats CSV");
  solve->add_option("--gf-series", gf_path, "Write the glue-fraction time series CSV");
  solve->add_flag("--no-model", no_model, "Do not print the model");

  auto* bench = app.add_subcommand("bench", "Run baseline vs glue-bump over a corpus");
  std::string manifest;
  std::string out_dir = "bench-out";
  gbsat::bench::CorpusOptions corpus;
  bool in_process = false;
  bench->add_option("--manifest", manifest, "File listing instance paths")->required();
  bench->add_option("--timeout", corpus.timeout, "Per-instance timeout in seconds")
      ->capture_default_str();
  bench->add_option("--max-conflicts", max_conflicts, "Conflict budget (0 = none)");
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--jobs", corpus.jobs, "Parallel workers")->capture_default_str();
  bench->add_option("--out-dir", out_dir, "Directory for records/summary/series CSV")
      ->capture_default_str();
  bench->add_flag("--in-process", in_process, "Run solves in-process without worker isolation");

  auto* check = app.add_subcommand("check", "RUP-check a DRAT proof");
  std::string check_cnf, check_proof;
  check->add_option("cnf", check_cnf, "DIMACS CNF")->required();
  check->add_option("proof", check_proof, "DRAT proof")->required();

  auto* gen = app.add_subcommand("gen", "Generate benchmark instances");
  std::string kind;
  uint32_t n = 20;
  double ratio = 4.26;
  bool unsat = false;
  std::string gen_out;
  gen->add_option("kind", kind, "random3 | php | parity | unit | corpus")->required();
  gen->add_option("-n", n, "Size parameter")->capture_default_str();
  gen->add_option("--ratio", ratio, "Clause/variable ratio for random3")->capture_default_str();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_flag("--unsat", unsat, "Unsatisfiable variant (parity, unit)");
  gen->add_option("--out", gen_out, "Output file (corpus: directory)");

  CLI11_PARSE(app, argc, argv);

  if (*solve) {
    single.config = make_config(glue_bump, seed);
    if (timeout > 0) single.budget.time_limit_seconds = timeout;
    if (max_conflicts > 0) single.budget.max_conflicts = max_conflicts;
    if (!proof_path.empty()) single.proof_path = proof_path;
    if (!stats_path.empty()) single.stats_csv_path = stats_path;
    if (!gf_path.empty()) single.gf_series_path = gf_path;
    single.print_model = !no_model;
    return gbsat::bench::run_single(single, std::cout, std::cerr);
  }
  if (*bench) {
    if (max_conflicts > 0) corpus.max_conflicts = max_conflicts;
    corpus.isolate = !in_process;
    return run_bench(manifest, corpus, seed, out_dir);
  }
  if (*check) {
    try {
      gbsat::Formula f = gbsat::parse_dimacs_file(check_cnf);
      std::ifstream proof(check_proof);
      if (!proof) throw std::runtime_error("cannot open '" + check_proof + "'");
      const bool ok = gbsat::check_rup(f, proof);
      std::cout << (ok ? "s VERIFIED\n" : "s NOT VERIFIED\n");
      return ok ? 0 : 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  if (*gen) {
    try {
      return run_gen(kind, n, ratio, seed, unsat, gen_out);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
