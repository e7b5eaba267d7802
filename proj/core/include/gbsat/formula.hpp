#pragma once

#include "gbsat/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gbsat {

/// A clause. Parsed clauses are never learnt; the solver reuses the type for
/// its own clause store.
struct Clause {
  std::vector<Lit> literals;
  bool learnt = false;
  uint32_t lbd = 0; // 0 = unset
  bool glue = false;
  double activity = 0.0;

  [[nodiscard]] size_t size() const { return literals.size(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Formula {
  uint32_t num_vars = 0;
  std::vector<Clause> clauses;

  friend bool operator==(const Formula&, const Formula&) = default;
};

class DimacsError : public std::runtime_error {
public:
  DimacsError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] size_t line() const { return line_; }

private:
  size_t line_;
};

/// Removes duplicate literals (keeping the first occurrence). Returns nullopt
/// when the clause contains a complementary pair.
[[nodiscard]] std::optional<std::vector<Lit>> normalize_clause(std::span<const Lit> literals);

/// Parses DIMACS CNF. Tautologies are dropped, duplicate literals removed,
/// an empty clause is kept. A header/body clause-count mismatch is reported
/// through `warnings` (when given) instead of failing.
[[nodiscard]] Formula parse_dimacs(std::istream& in, std::vector<std::string>* warnings = nullptr);
[[nodiscard]] Formula parse_dimacs(std::string_view text,
                                   std::vector<std::string>* warnings = nullptr);
[[nodiscard]] Formula parse_dimacs_file(const std::string& path,
                                        std::vector<std::string>* warnings = nullptr);

void write_dimacs(std::ostream& out, const Formula& formula);
[[nodiscard]] std::string to_dimacs(const Formula& formula);

} // namespace gbsat
