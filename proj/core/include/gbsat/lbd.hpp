#pragma once

#include "gbsat/types.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gbsat {

/// Literal block distance: the number of distinct decision levels among the
/// clause's literals. `level_of` returns nullopt for an unassigned variable,
/// which violates the precondition and throws std::invalid_argument.
template <class LevelOf>
  requires std::invocable<LevelOf&, Var>
[[nodiscard]] uint32_t compute_lbd(std::span<const Lit> clause, LevelOf&& level_of) {
  std::vector<uint32_t> levels;
  levels.reserve(clause.size());
  for (Lit l : clause) {
    std::optional<uint32_t> level = level_of(l.var());
    if (!level) throw std::invalid_argument("compute_lbd: unassigned literal in clause");
    levels.push_back(*level);
  }
  std::sort(levels.begin(), levels.end());
  return static_cast<uint32_t>(std::unique(levels.begin(), levels.end()) - levels.begin());
}

} // namespace gbsat
