#pragma once

#include "gbsat/formula.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gbsat::gen {

/// Uniform random k-SAT: each clause draws k distinct variables and random
/// signs from a splitmix64 stream seeded with `seed`.
[[nodiscard]] Formula random_ksat(uint32_t num_vars, uint32_t num_clauses, uint32_t k,
                                  uint64_t seed);

/// Pigeonhole PHP(holes + 1, holes): unsatisfiable, (holes+1)*holes variables.
[[nodiscard]] Formula pigeonhole(uint32_t holes);

/// XOR of n variables fixed to `parity` through a chain of Tseitin-encoded
/// binary XORs (2n - 1 variables). With `contradict` a second chain over the
/// same inputs in reverse order asserts the opposite parity (3n - 2
/// variables, unsatisfiable).
[[nodiscard]] Formula parity_chain(uint32_t n, bool parity, bool contradict = false);

/// x1, x1 -> x2, ..., x(n-1) -> xn; with `contradict` also (-xn).
[[nodiscard]] Formula unit_chain(uint32_t n, bool contradict);

struct NamedFormula {
  std::string name;
  Formula formula;
};

/// Desk-scale benchmark corpus: uniform random 3-SAT at clause/variable ratio
/// 4.26 for n = 100..150 (step 10, `seeds_per_size` instances each) plus
/// crafted pigeonhole, parity and unit-chain instances.
[[nodiscard]] std::vector<NamedFormula> desk_corpus(uint32_t seeds_per_size = 4,
                                                    uint64_t seed = 1);

} // namespace gbsat::gen
