#include "gbsat/restart.hpp"

namespace gbsat {

uint64_t luby(uint64_t index) {
  // Find the finite subsequence containing index and its size.
  uint64_t size = 1;
  uint64_t seq = 0;
  while (size < index + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  uint64_t x = index;
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return uint64_t{1} << seq;
}

} // namespace gbsat
