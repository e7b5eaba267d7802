#pragma once

#include "gbsat/formula.hpp"
#include "gbsat/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbsat {

struct ProofEvent {
  enum class Kind { Add, Delete };
  Kind kind = Kind::Add;
  std::vector<int> literals; // DIMACS-style signed, 1-based

  friend bool operator==(const ProofEvent&, const ProofEvent&) = default;
};

/// Serializes a ProofEvent as a text DRAT line including the trailing newline.
[[nodiscard]] std::string format_drat(const ProofEvent& event);

/// Text DRAT sink. Add is written "<lits> 0", Delete "d <lits> 0".
class ProofWriter {
public:
  explicit ProofWriter(std::ostream& out) : out_(&out) {}

  /// Throws std::runtime_error when the underlying stream fails.
  void emit(const ProofEvent& event);
  void add(std::span<const Lit> clause);
  void remove(std::span<const Lit> clause);
  void flush();

  [[nodiscard]] uint64_t additions() const { return additions_; }
  [[nodiscard]] uint64_t deletions() const { return deletions_; }

private:
  void write(bool deletion, std::span<const Lit> clause);
  void check();

  std::ostream* out_;
  uint64_t additions_ = 0;
  uint64_t deletions_ = 0;
};

class ProofFormatError : public std::runtime_error {
public:
  ProofFormatError(size_t line, const std::string& what)
      : std::runtime_error("proof line " + std::to_string(line) + ": " + what) {}
};

/// Parses text DRAT. Throws ProofFormatError on a malformed line.
[[nodiscard]] std::vector<ProofEvent> parse_drat(std::istream& in);
[[nodiscard]] std::vector<ProofEvent> parse_drat(const std::string& text);

struct RupCheckResult {
  bool valid = false;
  bool derived_empty = false;
  size_t steps = 0;
  /// 0-based index of the first addition that failed the RUP check.
  std::optional<size_t> failed_step;
};

/// Reverse-unit-propagation checker. Each added clause must be implied by
/// unit propagation from the formula plus earlier, undeleted additions, and
/// the proof must add the empty clause. Deletions of clauses that are not
/// present are ignored.
[[nodiscard]] RupCheckResult check_rup_detailed(const Formula& formula,
                                                std::span<const ProofEvent> proof);
[[nodiscard]] bool check_rup(const Formula& formula, std::span<const ProofEvent> proof);
[[nodiscard]] bool check_rup(const Formula& formula, std::istream& proof);

} // namespace gbsat
