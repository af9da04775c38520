#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mlhs/field.hpp"

namespace mlhs {

// One acceptance criterion, executed end to end with fixed seeds and
// tolerances. `details` holds short statistics on success or the first
// failing check.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string details;
};

CriterionResult run_criterion(int index, const Field& field);

// Runs all ten criteria in order, printing one line per criterion to `out`
// when non-null.
std::vector<CriterionResult> run_acceptance(const Field& field,
                                            std::ostream* out = nullptr);

}  // namespace mlhs
