#pragma once

#include <cstdint>

#include "mlhs/errors.hpp"

namespace mlhs {

/// Prime field context. Elements are uint64_t values in [0, p); all ops take
/// and return canonical representatives. Default modulus is the Mersenne
/// prime 2^61 - 1; any odd prime < 2^63 works.
class Field {
 public:
  static constexpr uint64_t kDefaultModulus = 0x1fffffffffffffffULL;  // 2^61 - 1

  explicit Field(uint64_t p = kDefaultModulus);

  uint64_t modulus() const { return p_; }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t s = a + b;  // p < 2^63 so no overflow
    return s >= p_ ? s - p_ : s;
  }

  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p_ - b; }

  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p_ - a; }

  uint64_t mul(uint64_t a, uint64_t b) const {
    return static_cast<uint64_t>((unsigned __int128)a * b % p_);
  }

  uint64_t pow(uint64_t a, uint64_t e) const;

  // Inverse of a nonzero element (Fermat); raises on zero.
  uint64_t inv(uint64_t a) const;

  // Canonical representative of a signed integer.
  uint64_t from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<uint64_t>(r);
  }

  // Balanced print form: values above p/2 shown negative (small coefficients
  // round-trip as themselves).
  long long to_signed(uint64_t a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_)
                      : static_cast<long long>(a);
  }

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  uint64_t p_;
};

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Smallest prime >= n (n <= 2^62 or so; desk scale only).
uint64_t next_prime_at_least(uint64_t n);

}  // namespace mlhs
