#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

namespace gbsat {

/// A propositional variable. 0-based internally, 1-based in DIMACS.
struct Var {
  uint32_t index = 0;

  constexpr Var() = default;
  constexpr explicit Var(uint32_t i) : index(i) {}

  [[nodiscard]] constexpr int to_dimacs() const { return static_cast<int>(index) + 1; }

  friend constexpr auto operator<=>(Var, Var) = default;
};

/// A literal encoded as 2*var + (negative ? 1 : 0), so negation flips bit 0.
class Lit {
public:
  constexpr Lit() = default;
  constexpr Lit(Var v, bool positive) : code_(2 * v.index + (positive ? 0U : 1U)) {}

  [[nodiscard]] static constexpr Lit from_code(uint32_t code) {
    Lit l;
    l.code_ = code;
    return l;
  }
  /// Converts a nonzero signed DIMACS integer.
  [[nodiscard]] static Lit from_dimacs(int value) {
    return Lit(Var(static_cast<uint32_t>(std::abs(value)) - 1), value > 0);
  }

  [[nodiscard]] constexpr uint32_t code() const { return code_; }
  [[nodiscard]] constexpr Var var() const { return Var(code_ >> 1); }
  [[nodiscard]] constexpr bool positive() const { return (code_ & 1U) == 0; }
  [[nodiscard]] constexpr int to_dimacs() const {
    return positive() ? var().to_dimacs() : -var().to_dimacs();
  }

  constexpr Lit operator~() const { return from_code(code_ ^ 1U); }

  friend constexpr auto operator<=>(Lit, Lit) = default;

private:
  uint32_t code_ = 0;
};

enum class LBool : uint8_t { False = 0, True = 1, Undef = 2 };

constexpr LBool operator^(LBool value, bool flip) {
  if (value == LBool::Undef || !flip) return value;
  return value == LBool::True ? LBool::False : LBool::True;
}

/// Index of a clause in the solver's clause store.
struct ClauseRef {
  uint32_t index = 0;
  friend constexpr auto operator<=>(ClauseRef, ClauseRef) = default;
};

enum class Verdict { Sat, Unsat, Unknown };

[[nodiscard]] inline std::string to_string(Verdict v) {
  switch (v) {
  case Verdict::Sat: return "SAT";
  case Verdict::Unsat: return "UNSAT";
  case Verdict::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

} // namespace gbsat

template <> struct std::hash<gbsat::Lit> {
  size_t operator()(gbsat::Lit l) const noexcept { return std::hash<uint32_t>{}(l.code()); }
};
