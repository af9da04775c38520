#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlhs/bits.hpp"
#include "mlhs/errors.hpp"

namespace mlhs {

// A family of partitions of subsets of {1..n}; each set is a variable mask
// (element e is bit e-1). Sets within one partition must be disjoint.
using PartitionFamily = std::vector<std::vector<VarMask>>;

void validate_partitions(const PartitionFamily& parts, uint32_t n);

/// k-wise independent hash family [n] -> [m]: all degree-<k polynomials over
/// F_q (q = smallest prime >= max(n, m)), folded into buckets by
/// h(x) = ((poly(x) mod q) mod m) + 1. Members enumerate lexicographically by
/// coefficient vector (c_0 least significant digit base q).
class HashFamily {
 public:
  HashFamily(uint32_t n, uint32_t m, uint32_t k,
             std::optional<uint64_t> q_override = std::nullopt);

  uint32_t n() const { return n_; }
  uint32_t m() const { return m_; }
  uint32_t k() const { return k_; }
  uint64_t q() const { return q_; }

  // q^k, saturating at UINT64_MAX.
  uint64_t size() const;

  std::vector<uint64_t> member(uint64_t index) const;

  // Evaluation over F_q (pre-bucket value).
  uint64_t poly_eval(const std::vector<uint64_t>& coeffs, uint64_t x) const;

  // Bucket in [1, m]; x ranges over [1, n].
  uint32_t bucket(const std::vector<uint64_t>& coeffs, uint32_t x) const;

  // Mask of elements mapping to bucket j.
  VarMask preimage(const std::vector<uint64_t>& coeffs, uint32_t j) const;

 private:
  uint32_t n_, m_, k_;
  uint64_t q_;
};

struct HashCheckResult {
  bool ok = true;
  int condition = 0;        // 1 or 2 when violated
  size_t part_index = 0;    // offending partition
  uint32_t bucket = 0;      // offending bucket
  VarMask set = 0;          // offending set (condition 1)
  uint64_t count = 0;       // offending cardinality
};

// Explicit verification of the two hash conditions for one member:
// (1) every set of every partition meets every bucket preimage in <= k
//     elements;
// (2) per partition and bucket, at most k*log2(n) sets meet the preimage in
//     more than one element.
HashCheckResult check_hash_conditions(const HashFamily& family,
                                      const std::vector<uint64_t>& coeffs,
                                      const PartitionFamily& parts);

struct GoodHash {
  uint64_t index;
  std::vector<uint64_t> coeffs;
};

// First member (in enumeration order) satisfying both conditions; throws if
// the family is exhausted or the enumeration budget is hit.
GoodHash find_good_hash(const HashFamily& family, const PartitionFamily& parts,
                        uint64_t enumeration_cap = uint64_t{1} << 24);

}  // namespace mlhs
