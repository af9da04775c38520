#pragma once

#include <cstdint>

#include "mlhs/hitting.hpp"
#include "mlhs/poly.hpp"

namespace mlhs {

// Find a nonzero multilinear polynomial over n variables vanishing on every
// point of H. Requires |H| < 2^n. Deterministic: columns (monomials) are
// scanned by degree then lexicographically; the first column dependent on
// its predecessors gets coefficient 1 and the dependency supplies the rest.
SparseMultilinearPoly vanishing_multilinear(
    const HittingSet& H, uint32_t n,
    uint64_t column_budget = uint64_t{1} << 20);

// True iff f is nonzero and evaluates to 0 on every point of H.
bool verify_certificate(const SparseMultilinearPoly& f, const HittingSet& H);

}  // namespace mlhs
