#pragma once

#include <cstdint>

namespace gbsat {

/// i-th element (0-based) of the Luby sequence 1,1,2,1,1,2,4,1,1,2,...
[[nodiscard]] uint64_t luby(uint64_t index);

/// Luby restarts: the k-th restart interval is base * luby(k) conflicts.
class LubyRestarts {
public:
  explicit LubyRestarts(uint64_t base = 100) : base_(base) {}

  void on_conflict() { ++since_restart_; }
  [[nodiscard]] bool should_restart() const { return since_restart_ >= current_bound(); }
  [[nodiscard]] uint64_t current_bound() const { return base_ * luby(index_); }
  /// Resets the counter and advances to the next interval.
  void on_restart() {
    since_restart_ = 0;
    ++index_;
  }
  [[nodiscard]] uint64_t restarts() const { return index_; }
  [[nodiscard]] uint64_t conflicts_since_restart() const { return since_restart_; }

private:
  uint64_t base_;
  uint64_t index_ = 0;
  uint64_t since_restart_ = 0;
};

} // namespace gbsat
