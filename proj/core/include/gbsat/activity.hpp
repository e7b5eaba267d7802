#pragma once

#include "gbsat/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gbsat {

/// EVSIDS activity scores with a max-priority heap over unassigned variables.
///
/// Heap order is (activity descending, variable index ascending), so the top
/// is the highest-activity variable and ties go to the lowest index. The
/// solver keeps the heap holding exactly the unassigned variables: it calls
/// remove() on assignment and insert() on unassignment.
class ActivityTable {
public:
  static constexpr double kRescaleThreshold = 1e100;
  static constexpr double kRescaleFactor = 1e-100;

  explicit ActivityTable(uint32_t num_vars, double decay = 0.95, double initial_increment = 1.0);

  [[nodiscard]] uint32_t num_vars() const { return static_cast<uint32_t>(activity_.size()); }
  [[nodiscard]] double activity(Var v) const { return activity_[v.index]; }
  [[nodiscard]] std::span<const double> activities() const { return activity_; }
  [[nodiscard]] double increment() const { return increment_; }
  [[nodiscard]] double decay_factor() const { return decay_; }
  [[nodiscard]] uint64_t rescale_count() const { return rescales_; }

  /// Adds the current increment (conflict-side bump).
  void bump(Var v) { bump(v, increment_); }
  /// Adds `amount`; rescales every activity and the increment by 1e-100 when
  /// the result exceeds 1e100.
  void bump(Var v, double amount);
  /// Grows the increment by 1/decay.
  void decay() { increment_ /= decay_; }
  /// Multiplies every activity and the increment by `factor` (> 0).
  void scale_all(double factor);

  [[nodiscard]] bool in_heap(Var v) const { return position_[v.index] != kAbsent; }
  [[nodiscard]] bool heap_empty() const { return heap_.empty(); }
  [[nodiscard]] size_t heap_size() const { return heap_.size(); }
  [[nodiscard]] std::span<const uint32_t> heap_contents() const { return heap_; }
  [[nodiscard]] std::optional<Var> top() const;
  void insert(Var v);
  void remove(Var v);
  /// Checks the heap property and the position index. For tests.
  [[nodiscard]] bool heap_consistent() const;

  /// True when `a` should be picked before `b`.
  [[nodiscard]] bool before(uint32_t a, uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

private:
  static constexpr uint32_t kAbsent = UINT32_MAX;

  void sift_up(uint32_t pos);
  void sift_down(uint32_t pos);
  void place(uint32_t pos, uint32_t var) {
    heap_[pos] = var;
    position_[var] = pos;
  }

  std::vector<double> activity_;
  std::vector<uint32_t> heap_;
  std::vector<uint32_t> position_;
  double increment_;
  double decay_;
  uint64_t rescales_ = 0;
};

} // namespace gbsat
