#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mlhs {

// Variable sets are 64-bit masks; bit i = variable i (0-based).
using VarMask = uint64_t;

constexpr uint32_t kMaxVars = 64;

inline uint32_t popcount(VarMask m) { return static_cast<uint32_t>(std::popcount(m)); }

inline bool has_var(VarMask m, uint32_t i) { return (m >> i) & 1u; }

inline VarMask full_mask(uint32_t n) {
  return n >= 64 ? ~VarMask{0} : ((VarMask{1} << n) - 1);
}

inline std::vector<uint32_t> mask_to_indices(VarMask m) {
  std::vector<uint32_t> out;
  while (m) {
    out.push_back(static_cast<uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

inline VarMask indices_to_mask(const std::vector<uint32_t>& idx) {
  VarMask m = 0;
  for (uint32_t i : idx) m |= VarMask{1} << i;
  return m;
}

// Degree-then-lexicographic order on variable sets: fewer variables first;
// same degree compares the ascending index sequences lexicographically.
inline bool deglex_less(VarMask a, VarMask b) {
  if (a == b) return false;
  uint32_t pa = popcount(a), pb = popcount(b);
  if (pa != pb) return pa < pb;
  // First differing index decides: whichever set owns it sorts first.
  VarMask d = a ^ b;
  VarMask low = d & (~d + 1);
  return (a & low) != 0;
}

// Enumerates all subsets of `universe` with exactly `sz` bits, ascending as
// integers (colexicographic on index sets). Gosper's hack on a compact mask,
// bits then scattered into the universe's positions.
class SubsetRange {
 public:
  SubsetRange(VarMask universe, uint32_t sz)
      : positions_(mask_to_indices(universe)), size_(sz) {}

  template <typename Fn>
  void for_each(Fn&& fn) const {
    uint32_t u = static_cast<uint32_t>(positions_.size());
    if (size_ > u) return;
    if (size_ == 0) {
      fn(VarMask{0});
      return;
    }
    uint64_t comb = (uint64_t{1} << size_) - 1;
    uint64_t limit = u >= 64 ? ~uint64_t{0} : (uint64_t{1} << u);
    while (comb < limit) {
      VarMask m = 0;
      uint64_t c = comb;
      while (c) {
        uint32_t b = static_cast<uint32_t>(std::countr_zero(c));
        m |= VarMask{1} << positions_[b];
        c &= c - 1;
      }
      fn(m);
      uint64_t x = comb & (~comb + 1), y = comb + x;
      comb = (((comb & ~y) / x) >> 1) | y;
    }
  }

 private:
  std::vector<uint32_t> positions_;
  uint32_t size_;
};

}  // namespace mlhs
