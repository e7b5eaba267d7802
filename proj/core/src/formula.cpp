#include "gbsat/formula.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace gbsat {

std::optional<std::vector<Lit>> normalize_clause(std::span<const Lit> literals) {
  std::vector<Lit> out;
  out.reserve(literals.size());
  if (literals.size() <= 32) {
    for (Lit l : literals) {
      if (std::find(out.begin(), out.end(), ~l) != out.end()) return std::nullopt;
      if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    return out;
  }
  std::unordered_set<Lit> seen;
  seen.reserve(literals.size() * 2);
  for (Lit l : literals) {
    if (seen.contains(~l)) return std::nullopt;
    if (seen.insert(l).second) out.push_back(l);
  }
  return out;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <class Int> std::optional<Int> parse_int(std::string_view token) {
  Int value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

} // namespace

Formula parse_dimacs(std::istream& in, std::vector<std::string>* warnings) {
  Formula formula;
  bool have_header = false;
  uint64_t declared_clauses = 0;
  uint64_t seen_clauses = 0;
  std::vector<Lit> pending;
  size_t line_no = 0;
  size_t pending_line = 0;
  std::string line;

  auto finish_clause = [&] {
    ++seen_clauses;
    if (auto normalized = normalize_clause(pending)) {
      Clause c;
      c.literals = std::move(*normalized);
      formula.clauses.push_back(std::move(c));
    }
    pending.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    size_t first = 0;
    while (first < view.size() && is_space(view[first])) ++first;
    view.remove_prefix(first);
    if (view.empty() || view.front() == 'c') continue;
    // SATLIB files terminate the clause section with a '%' line.
    if (view.front() == '%') break;

    if (view.front() == 'p') {
      if (have_header) throw DimacsError(line_no, "duplicate problem header");
      auto tokens = split_tokens(view);
      if (tokens.size() != 4 || tokens[0] != "p" || tokens[1] != "cnf")
        throw DimacsError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      auto vars = parse_int<uint32_t>(tokens[2]);
      auto clauses = parse_int<uint64_t>(tokens[3]);
      if (!vars || !clauses || *vars > static_cast<uint32_t>(std::numeric_limits<int>::max()))
        throw DimacsError(line_no, "malformed header counts");
      formula.num_vars = *vars;
      declared_clauses = *clauses;
      have_header = true;
      continue;
    }

    if (!have_header) throw DimacsError(line_no, "clause data before 'p cnf' header");
    for (std::string_view token : split_tokens(view)) {
      auto value = parse_int<int64_t>(token);
      if (!value) throw DimacsError(line_no, "non-integer token '" + std::string(token) + "'");
      if (*value == 0) {
        finish_clause();
        continue;
      }
      uint64_t magnitude = *value < 0 ? static_cast<uint64_t>(-*value) : static_cast<uint64_t>(*value);
      if (magnitude > formula.num_vars)
        throw DimacsError(line_no, "literal " + std::to_string(*value) +
                                       " out of range (declared " +
                                       std::to_string(formula.num_vars) + " variables)");
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Lit::from_dimacs(static_cast<int>(*value)));
    }
  }

  if (!have_header) throw DimacsError(line_no, "missing 'p cnf' header");
  if (!pending.empty())
    throw DimacsError(pending_line, "clause not terminated by 0 at end of input");
  if (warnings != nullptr && seen_clauses != declared_clauses) {
    warnings->push_back("header declares " + std::to_string(declared_clauses) +
                        " clauses, found " + std::to_string(seen_clauses));
  }
  return formula;
}

Formula parse_dimacs(std::string_view text, std::vector<std::string>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, warnings);
}

Formula parse_dimacs_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_dimacs(in, warnings);
}

void write_dimacs(std::ostream& out, const Formula& formula) {
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const Clause& c : formula.clauses) {
    for (Lit l : c.literals) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Formula& formula) {
  std::ostringstream out;
  write_dimacs(out, formula);
  return out.str();
}

} // namespace gbsat
