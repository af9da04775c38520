#pragma once

#include <cstdint>
#include <vector>

#include "mlhs/bits.hpp"
#include "mlhs/formula.hpp"

namespace mlhs {

enum class ReduceAction { kDerive, kRestrict };

struct ReduceStep {
  uint32_t var = 0;  // 0-based chosen variable
  ReduceAction action = ReduceAction::kDerive;
  uint64_t before = 0;  // bad-form count (depth 3) or distance (depth 4)
  uint64_t after = 0;
};

struct ReductionTrace {
  VarMask A = 0;  // derived variables
  VarMask B = 0;  // zeroed variables
  std::vector<ReduceStep> steps;
  uint64_t initial = 0;      // measure before the first step
  uint64_t measure_in = 0;   // formula measure after initial simplification
  uint64_t measure_out = 0;
  double threshold = 0.0;    // n^{1-eps} (depth 3) or tau (depth 4)
  bool certified = true;     // nonzeroness tracked through expansions
  bool var_from_expansion = true;  // variable sets came from expansions
  uint32_t junk_removed = 0;  // syntactic-only variables zeroed in place
};

struct Depth3Reduction {
  VarMask A = 0;
  Depth3Formula formula;
  ReductionTrace trace;
};

struct Depth4Reduction {
  VarMask A = 0;
  VarMask B = 0;
  Depth4Formula formula;
  ReductionTrace trace;
};

// Derive variables until every linear form touches at most n^{1-eps}
// variables of the computed polynomial. The result computes d_A(f).
Depth3Reduction reduce_depth3(const Depth3Formula& f, double eps,
                              uint64_t term_cap = kDefaultTermCap);

// Derive/zero variables until no factor with more than tau variables
// remains (delta_far == 0). The result computes d_A(f)|_{B=0}.
Depth4Reduction reduce_depth4(const Depth4Formula& f, uint32_t tau,
                              uint64_t term_cap = kDefaultTermCap);

// Distribute the middle sum of a depth-5 profile (a1,p1,a2,p2,1) into
// (a1*a2^p1, p1*p2, 1). Same polynomial, exact fan-in arithmetic.
RegularFormula squeeze(const RegularFormula& psi);

enum class SqueezeCase { kSmallDegree, kLargeP1, kSplit };

struct Depth4Reduced {
  SqueezeCase tag = SqueezeCase::kSmallDegree;
  uint32_t split_t = 0;       // split layer (kSplit only)
  double alpha = 0.0;         // (1/c)^{d-t} / (c-1) (kSplit only)
  uint64_t M = 0;             // top fan-in of the produced sum, before
                              // zero-gate pruning
  uint64_t S = 0;             // formal size of the source regular formula
  double log2M_bound = 0.0;   // promised bound: log2 S, or n^alpha * log2 S
  Depth4Formula formula;
};

// Depth reduction for regular formulas: flatten to a sum of products of
// sparse polynomials via one of three total cases.
Depth4Reduced regular_to_depth4(const RegularFormula& psi, double c = 5.0,
                                uint64_t term_cap = kDefaultTermCap);

}  // namespace mlhs
