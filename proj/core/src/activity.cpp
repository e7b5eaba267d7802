#include "gbsat/activity.hpp"

#include <cassert>
#include <stdexcept>

namespace gbsat {

ActivityTable::ActivityTable(uint32_t num_vars, double decay, double initial_increment)
    : activity_(num_vars, 0.0), position_(num_vars, kAbsent), increment_(initial_increment),
      decay_(decay) {
  if (!(decay > 0.0 && decay < 1.0)) throw std::invalid_argument("decay must lie in (0,1)");
  if (!(initial_increment > 0.0)) throw std::invalid_argument("increment must be positive");
  heap_.reserve(num_vars);
}

void ActivityTable::bump(Var v, double amount) {
  assert(amount >= 0.0);
  activity_[v.index] += amount;
  if (activity_[v.index] > kRescaleThreshold) {
    scale_all(kRescaleFactor);
    ++rescales_;
  }
  if (in_heap(v)) sift_up(position_[v.index]);
}

void ActivityTable::scale_all(double factor) {
  assert(factor > 0.0);
  for (double& a : activity_) a *= factor;
  increment_ *= factor;
}

std::optional<Var> ActivityTable::top() const {
  if (heap_.empty()) return std::nullopt;
  return Var(heap_.front());
}

void ActivityTable::insert(Var v) {
  if (in_heap(v)) return;
  heap_.push_back(v.index);
  position_[v.index] = static_cast<uint32_t>(heap_.size() - 1);
  sift_up(position_[v.index]);
}

void ActivityTable::remove(Var v) {
  if (!in_heap(v)) return;
  uint32_t pos = position_[v.index];
  uint32_t last = heap_.back();
  heap_.pop_back();
  position_[v.index] = kAbsent;
  if (pos == heap_.size()) return;
  place(pos, last);
  sift_up(pos);
  sift_down(position_[last]);
}

void ActivityTable::sift_up(uint32_t pos) {
  uint32_t var = heap_[pos];
  while (pos > 0) {
    uint32_t parent = (pos - 1) / 2;
    if (!before(var, heap_[parent])) break;
    place(pos, heap_[parent]);
    pos = parent;
  }
  place(pos, var);
}

void ActivityTable::sift_down(uint32_t pos) {
  uint32_t var = heap_[pos];
  const auto n = static_cast<uint32_t>(heap_.size());
  for (;;) {
    uint32_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], var)) break;
    place(pos, heap_[child]);
    pos = child;
  }
  place(pos, var);
}

bool ActivityTable::heap_consistent() const {
  for (uint32_t i = 0; i < heap_.size(); ++i) {
    if (position_[heap_[i]] != i) return false;
    if (i > 0 && before(heap_[i], heap_[(i - 1) / 2])) return false;
  }
  size_t present = 0;
  for (uint32_t p : position_) present += p != kAbsent ? 1 : 0;
  return present == heap_.size();
}

} // namespace gbsat
