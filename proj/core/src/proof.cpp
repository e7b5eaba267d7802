#include "gbsat/proof.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace gbsat {

std::string format_drat(const ProofEvent& event) {
  std::string line;
  if (event.kind == ProofEvent::Kind::Delete) line = "d ";
  for (int lit : event.literals) {
    line += std::to_string(lit);
    line += ' ';
  }
  line += "0\n";
  return line;
}

void ProofWriter::emit(const ProofEvent& event) {
  *out_ << format_drat(event);
  if (event.kind == ProofEvent::Kind::Add)
    ++additions_;
  else
    ++deletions_;
  check();
}

void ProofWriter::add(std::span<const Lit> clause) {
  write(false, clause);
  ++additions_;
}

void ProofWriter::remove(std::span<const Lit> clause) {
  write(true, clause);
  ++deletions_;
}

void ProofWriter::write(bool deletion, std::span<const Lit> clause) {
  if (deletion) *out_ << "d ";
  for (Lit l : clause) *out_ << l.to_dimacs() << ' ';
  *out_ << "0\n";
  check();
}

void ProofWriter::flush() {
  out_->flush();
  check();
}

void ProofWriter::check() {
  if (!*out_) throw std::runtime_error("proof output: write failed");
}

std::vector<ProofEvent> parse_drat(std::istream& in) {
  std::vector<ProofEvent> events;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == 'c') continue;
    std::istringstream tokens(line);
    std::string token;
    ProofEvent event;
    bool first = true;
    bool terminated = false;
    while (tokens >> token) {
      if (terminated) throw ProofFormatError(line_no, "tokens after terminating 0");
      if (first && token == "d") {
        event.kind = ProofEvent::Kind::Delete;
        first = false;
        continue;
      }
      first = false;
      int value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size() ||
          value == std::numeric_limits<int>::min())
        throw ProofFormatError(line_no, "non-integer token '" + token + "'");
      if (value == 0)
        terminated = true;
      else
        event.literals.push_back(value);
    }
    if (!terminated) throw ProofFormatError(line_no, "missing terminating 0");
    events.push_back(std::move(event));
  }
  return events;
}

std::vector<ProofEvent> parse_drat(const std::string& text) {
  std::istringstream in(text);
  return parse_drat(in);
}

namespace {

/// Clause database with occurrence lists, used only by the checker.
class RupDatabase {
public:
  void add(std::vector<int> lits) {
    auto id = static_cast<uint32_t>(clauses_.size());
    for (int l : lits) {
      grow(l);
      occurrences_[code(l)].push_back(id);
    }
    std::vector<int> key = lits;
    std::sort(key.begin(), key.end());
    by_key_[key].push_back(id);
    if (lits.empty()) ++empty_;
    if (lits.size() == 1) units_.push_back(id);
    clauses_.push_back(std::move(lits));
    alive_.push_back(true);
  }

  void remove(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    auto it = by_key_.find(lits);
    if (it == by_key_.end() || it->second.empty()) return;
    uint32_t id = it->second.back();
    it->second.pop_back();
    alive_[id] = false;
    if (clauses_[id].empty()) --empty_;
  }

  /// True when assigning the negation of `lemma` and propagating conflicts.
  bool implied(const std::vector<int>& lemma) {
    if (empty_ > 0) return true;
    for (int l : lemma) grow(l);
    bool conflict = false;
    for (int l : lemma) conflict = conflict || !assign(-l);
    for (uint32_t id : units_) {
      if (conflict) break;
      if (alive_[id]) conflict = !assign(clauses_[id][0]);
    }
    size_t head = 0;
    while (!conflict && head < trail_.size()) {
      int falsified = -trail_[head++];
      for (uint32_t id : occurrences_[code(falsified)]) {
        if (!alive_[id]) continue;
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int l : clauses_[id]) {
          int v = value(l);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = l;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) {
          conflict = true;
          break;
        }
        if (unassigned == 1) assign(last);
      }
    }
    for (int l : trail_) assignment_[static_cast<size_t>(std::abs(l))] = 0;
    trail_.clear();
    return conflict;
  }

private:
  static size_t code(int l) {
    return 2 * (static_cast<size_t>(std::abs(l)) - 1) + (l < 0 ? 1 : 0);
  }

  void grow(int l) {
    auto var = static_cast<size_t>(std::abs(l));
    if (assignment_.size() <= var) assignment_.resize(var + 1, 0);
    if (occurrences_.size() < 2 * var) occurrences_.resize(2 * var);
  }

  int value(int l) const {
    int v = assignment_[static_cast<size_t>(std::abs(l))];
    return l > 0 ? v : -v;
  }

  /// Returns false on a clash with the current assignment.
  bool assign(int l) {
    int v = value(l);
    if (v != 0) return v > 0;
    assignment_[static_cast<size_t>(std::abs(l))] = static_cast<int8_t>(l > 0 ? 1 : -1);
    trail_.push_back(l);
    return true;
  }

  std::vector<std::vector<int>> clauses_;
  std::vector<bool> alive_;
  std::vector<std::vector<uint32_t>> occurrences_;
  std::map<std::vector<int>, std::vector<uint32_t>> by_key_;
  std::vector<uint32_t> units_;
  size_t empty_ = 0;
  std::vector<int8_t> assignment_{0};
  std::vector<int> trail_;
};

} // namespace

RupCheckResult check_rup_detailed(const Formula& formula, std::span<const ProofEvent> proof) {
  RupDatabase db;
  for (const Clause& c : formula.clauses) {
    std::vector<int> lits;
    for (Lit l : c.literals) lits.push_back(l.to_dimacs());
    db.add(std::move(lits));
  }
  RupCheckResult result;
  size_t step = 0;
  for (const ProofEvent& event : proof) {
    ++result.steps;
    if (event.kind == ProofEvent::Kind::Delete) {
      db.remove(event.literals);
      continue;
    }
    if (!db.implied(event.literals)) {
      result.failed_step = step;
      return result;
    }
    ++step;
    if (event.literals.empty()) {
      result.derived_empty = true;
      result.valid = true;
      return result;
    }
    db.add(event.literals);
  }
  return result;
}

bool check_rup(const Formula& formula, std::span<const ProofEvent> proof) {
  return check_rup_detailed(formula, proof).valid;
}

bool check_rup(const Formula& formula, std::istream& proof) {
  auto events = parse_drat(proof);
  return check_rup(formula, events);
}

} // namespace gbsat
