#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mlhs/bits.hpp"
#include "mlhs/errors.hpp"
#include "mlhs/field.hpp"

namespace mlhs {

using Point = std::vector<uint64_t>;

/// Multilinear polynomial over a prime field, stored sparsely as a map from
/// variable mask to nonzero coefficient. Canonical: no zero coefficients.
class SparseMultilinearPoly {
 public:
  SparseMultilinearPoly(uint32_t n, const Field& f);

  static SparseMultilinearPoly zero(uint32_t n, const Field& f) { return {n, f}; }
  static SparseMultilinearPoly constant(uint32_t n, const Field& f, uint64_t c);
  // c * prod of variables in `vars`.
  static SparseMultilinearPoly monomial(uint32_t n, const Field& f, VarMask vars, uint64_t c);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  const std::map<VarMask, uint64_t>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  // Number of monomials ||f||.
  uint64_t sparsity() const { return terms_.size(); }

  // Leaf count: every monomial contributes max(1, #variables). The formula
  // size measure sums this over factors.
  uint64_t leaves() const;

  // Union of monomial supports; equals the semantic variable set since the
  // representation is canonical.
  VarMask var_mask() const;

  // Variables x with d_x f != 0 and f|_{x=0} != 0 (non-divisors among var).
  VarMask var_star_mask() const;

  uint64_t coeff(VarMask m) const;
  void set_coeff(VarMask m, uint64_t c);
  void add_term(VarMask m, uint64_t c);

  SparseMultilinearPoly operator+(const SparseMultilinearPoly& o) const;
  SparseMultilinearPoly operator-(const SparseMultilinearPoly& o) const;
  // Product; throws if the operands share variables (result would not be
  // multilinear).
  SparseMultilinearPoly operator*(const SparseMultilinearPoly& o) const;
  SparseMultilinearPoly scaled(uint64_t c) const;

  bool operator==(const SparseMultilinearPoly& o) const;
  bool operator!=(const SparseMultilinearPoly& o) const { return !(*this == o); }

  uint64_t eval(const Point& pt) const;

  // Formal derivative d_x f: monomials containing x, with x removed.
  SparseMultilinearPoly derivative(uint32_t x) const;
  // f with x set to a field value.
  SparseMultilinearPoly restricted(uint32_t x, uint64_t value) const;

  // d_A f then |_{B=0}; A and B are disjoint masks. Order is immaterial.
  SparseMultilinearPoly derive_restrict(VarMask A, VarMask B) const;

  void check_compatible(const SparseMultilinearPoly& o) const;

 private:
  uint32_t n_;
  Field field_;
  std::map<VarMask, uint64_t> terms_;
};

}  // namespace mlhs
