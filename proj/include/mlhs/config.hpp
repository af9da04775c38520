#pragma once

#include <cstdint>

namespace mlhs {

// Work caps shared by the constructions. All errors that hit a cap say which
// knob to raise.
struct Budget {
  uint64_t max_terms = uint64_t{1} << 20;   // expansion term cap
  uint64_t max_points = uint64_t{1} << 22;  // distinct hitting-set points
  uint64_t max_family = uint64_t{1} << 24;  // hash members enumerated
};

}  // namespace mlhs
