#include "mlhs/hashing.hpp"

#include <cmath>

#include "mlhs/field.hpp"

namespace mlhs {

void validate_partitions(const PartitionFamily& parts, uint32_t n) {
  VarMask universe = full_mask(n);
  for (size_t i = 0; i < parts.size(); ++i) {
    VarMask seen = 0;
    for (VarMask a : parts[i]) {
      if (a == 0) throw param_error("partition " + std::to_string(i + 1) + " has an empty set");
      if (a & ~universe)
        throw param_error("partition " + std::to_string(i + 1) + " uses elements > n");
      if (a & seen)
        throw param_error("partition " + std::to_string(i + 1) + " has overlapping sets");
      seen |= a;
    }
  }
}

HashFamily::HashFamily(uint32_t n, uint32_t m, uint32_t k, std::optional<uint64_t> q_override)
    : n_(n), m_(m), k_(k) {
  if (n == 0 || m == 0 || k == 0) throw param_error("hash family needs n, m, k >= 1");
  uint64_t q_min = std::max<uint64_t>(std::max<uint64_t>(n, m), 2);
  if (q_override) {
    if (!is_prime_u64(*q_override) || *q_override < q_min)
      throw param_error("hash modulus override must be a prime >= max(n, m)");
    q_ = *q_override;
  } else {
    q_ = next_prime_at_least(q_min);
  }
}

uint64_t HashFamily::size() const {
  uint64_t r = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    if (r > UINT64_MAX / q_) return UINT64_MAX;
    r *= q_;
  }
  return r;
}

std::vector<uint64_t> HashFamily::member(uint64_t index) const {
  std::vector<uint64_t> coeffs(k_);
  for (uint32_t i = 0; i < k_; ++i) {
    coeffs[i] = index % q_;
    index /= q_;
  }
  return coeffs;
}

uint64_t HashFamily::poly_eval(const std::vector<uint64_t>& coeffs, uint64_t x) const {
  uint64_t r = 0;
  x %= q_;
  for (size_t i = coeffs.size(); i-- > 0;)
    r = (static_cast<unsigned __int128>(r) * x + coeffs[i]) % q_;
  return r;
}

uint32_t HashFamily::bucket(const std::vector<uint64_t>& coeffs, uint32_t x) const {
  if (x == 0 || x > n_) throw param_error("hash argument out of [1, n]");
  return static_cast<uint32_t>(poly_eval(coeffs, x) % m_) + 1;
}

VarMask HashFamily::preimage(const std::vector<uint64_t>& coeffs, uint32_t j) const {
  VarMask out = 0;
  for (uint32_t x = 1; x <= n_; ++x)
    if (bucket(coeffs, x) == j) out |= VarMask{1} << (x - 1);
  return out;
}

HashCheckResult check_hash_conditions(const HashFamily& family,
                                      const std::vector<uint64_t>& coeffs,
                                      const PartitionFamily& parts) {
  uint32_t n = family.n(), m = family.m(), k = family.k();
  validate_partitions(parts, n);
  std::vector<uint32_t> bucket_of(n + 1);
  for (uint32_t x = 1; x <= n; ++x) bucket_of[x] = family.bucket(coeffs, x);

  double cap2 = static_cast<double>(k) * std::log2(static_cast<double>(n));
  HashCheckResult res;
  for (size_t i = 0; i < parts.size(); ++i) {
    std::vector<uint64_t> gt1(m + 1, 0);
    for (VarMask a : parts[i]) {
      std::vector<uint32_t> inter(m + 1, 0);
      for (uint32_t e : mask_to_indices(a)) ++inter[bucket_of[e + 1]];
      for (uint32_t j = 1; j <= m; ++j) {
        if (inter[j] > k) {
          res.ok = false;
          res.condition = 1;
          res.part_index = i;
          res.bucket = j;
          res.set = a;
          res.count = inter[j];
          return res;
        }
        if (inter[j] > 1) ++gt1[j];
      }
    }
    for (uint32_t j = 1; j <= m; ++j)
      if (static_cast<double>(gt1[j]) > cap2) {
        res.ok = false;
        res.condition = 2;
        res.part_index = i;
        res.bucket = j;
        res.count = gt1[j];
        return res;
      }
  }
  return res;
}

GoodHash find_good_hash(const HashFamily& family, const PartitionFamily& parts,
                        uint64_t enumeration_cap) {
  uint64_t total = family.size();
  uint64_t limit = std::min(total, enumeration_cap);
  for (uint64_t idx = 0; idx < limit; ++idx) {
    auto coeffs = family.member(idx);
    if (check_hash_conditions(family, coeffs, parts).ok) return {idx, std::move(coeffs)};
  }
  if (limit < total)
    throw budget_error("hash search stopped at enumeration cap " +
                       std::to_string(enumeration_cap) + " without a passing member");
  throw error("hash family exhausted: no member satisfies the hash conditions");
}

}  // namespace mlhs
