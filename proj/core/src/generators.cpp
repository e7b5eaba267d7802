#include "gbsat/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace gbsat::gen {

namespace {

class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}
  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  uint32_t below(uint32_t bound) { return static_cast<uint32_t>(next() % bound); }

private:
  uint64_t state_;
};

Clause make_clause(std::initializer_list<int> dimacs) {
  Clause c;
  for (int l : dimacs) c.literals.push_back(Lit::from_dimacs(l));
  return c;
}

/// Adds clauses for c <-> (a xor b), all DIMACS variables.
void add_xor(Formula& f, int a, int b, int c) {
  f.clauses.push_back(make_clause({-a, -b, -c}));
  f.clauses.push_back(make_clause({a, b, -c}));
  f.clauses.push_back(make_clause({a, -b, c}));
  f.clauses.push_back(make_clause({-a, b, c}));
}

/// Chains XORs over `inputs`, returning the variable holding their parity.
int xor_chain(Formula& f, const std::vector<int>& inputs) {
  int acc = inputs[0];
  for (size_t i = 1; i < inputs.size(); ++i) {
    int out = static_cast<int>(++f.num_vars);
    add_xor(f, acc, inputs[i], out);
    acc = out;
  }
  return acc;
}

} // namespace

Formula random_ksat(uint32_t num_vars, uint32_t num_clauses, uint32_t k, uint64_t seed) {
  if (k == 0 || k > num_vars) throw std::invalid_argument("random_ksat: need 0 < k <= num_vars");
  SplitMix64 rng(seed);
  Formula f;
  f.num_vars = num_vars;
  f.clauses.reserve(num_clauses);
  std::vector<uint32_t> vars;
  for (uint32_t i = 0; i < num_clauses; ++i) {
    vars.clear();
    while (vars.size() < k) {
      uint32_t v = rng.below(num_vars);
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    Clause c;
    for (uint32_t v : vars) c.literals.emplace_back(Var(v), (rng.next() & 1U) != 0);
    f.clauses.push_back(std::move(c));
  }
  return f;
}

Formula pigeonhole(uint32_t holes) {
  const uint32_t pigeons = holes + 1;
  Formula f;
  f.num_vars = pigeons * holes;
  auto var = [holes](uint32_t p, uint32_t h) { return static_cast<int>(p * holes + h + 1); };
  for (uint32_t p = 0; p < pigeons; ++p) {
    Clause c;
    for (uint32_t h = 0; h < holes; ++h) c.literals.push_back(Lit::from_dimacs(var(p, h)));
    f.clauses.push_back(std::move(c));
  }
  for (uint32_t h = 0; h < holes; ++h)
    for (uint32_t p = 0; p < pigeons; ++p)
      for (uint32_t q = p + 1; q < pigeons; ++q)
        f.clauses.push_back(make_clause({-var(p, h), -var(q, h)}));
  return f;
}

Formula parity_chain(uint32_t n, bool parity, bool contradict) {
  if (n < 2) throw std::invalid_argument("parity_chain: need n >= 2");
  Formula f;
  f.num_vars = n;
  std::vector<int> inputs;
  for (uint32_t i = 1; i <= n; ++i) inputs.push_back(static_cast<int>(i));
  int out = xor_chain(f, inputs);
  f.clauses.push_back(make_clause({parity ? out : -out}));
  if (contradict) {
    std::reverse(inputs.begin(), inputs.end());
    int other = xor_chain(f, inputs);
    f.clauses.push_back(make_clause({parity ? -other : other}));
  }
  return f;
}

Formula unit_chain(uint32_t n, bool contradict) {
  if (n == 0) throw std::invalid_argument("unit_chain: need n >= 1");
  Formula f;
  f.num_vars = n;
  f.clauses.push_back(make_clause({1}));
  for (int i = 1; i < static_cast<int>(n); ++i) f.clauses.push_back(make_clause({-i, i + 1}));
  if (contradict) f.clauses.push_back(make_clause({-static_cast<int>(n)}));
  return f;
}

std::vector<NamedFormula> desk_corpus(uint32_t seeds_per_size, uint64_t seed) {
  std::vector<NamedFormula> out;
  for (uint32_t n = 100; n <= 150; n += 10) {
    const auto m = static_cast<uint32_t>(n * 4.26 + 0.5);
    for (uint32_t s = 0; s < seeds_per_size; ++s) {
      out.push_back({"uf3-n" + std::to_string(n) + "-s" + std::to_string(s),
                     random_ksat(n, m, 3, seed * 1000003ULL + n * 101ULL + s)});
    }
  }
  for (uint32_t holes : {5U, 6U, 7U})
    out.push_back({"php-" + std::to_string(holes + 1) + "-" + std::to_string(holes),
                   pigeonhole(holes)});
  out.push_back({"parity-30-sat", parity_chain(30, true)});
  out.push_back({"parity-30-unsat", parity_chain(30, true, true)});
  out.push_back({"unit-chain-200-unsat", unit_chain(200, true)});
  out.push_back({"unit-chain-200-sat", unit_chain(200, false)});
  return out;
}

} // namespace gbsat::gen
