#include "mlhs/poly.hpp"

namespace mlhs {

SparseMultilinearPoly::SparseMultilinearPoly(uint32_t n, const Field& f) : n_(n), field_(f) {
  if (n > kMaxVars)
    throw param_error("variable count " + std::to_string(n) + " exceeds supported maximum " +
                      std::to_string(kMaxVars));
}

SparseMultilinearPoly SparseMultilinearPoly::constant(uint32_t n, const Field& f, uint64_t c) {
  SparseMultilinearPoly p(n, f);
  if (c % f.modulus() != 0) p.terms_[0] = c % f.modulus();
  return p;
}

SparseMultilinearPoly SparseMultilinearPoly::monomial(uint32_t n, const Field& f, VarMask vars,
                                                      uint64_t c) {
  SparseMultilinearPoly p(n, f);
  if (vars & ~full_mask(n))
    throw dimension_error("monomial uses a variable index >= n");
  c %= f.modulus();
  if (c != 0) p.terms_[vars] = c;
  return p;
}

uint64_t SparseMultilinearPoly::leaves() const {
  uint64_t total = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    uint32_t v = popcount(m);
    total += v == 0 ? 1 : v;
  }
  return total;
}

VarMask SparseMultilinearPoly::var_mask() const {
  VarMask u = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    u |= m;
  }
  return u;
}

VarMask SparseMultilinearPoly::var_star_mask() const {
  VarMask out = 0;
  for (uint32_t x : mask_to_indices(var_mask())) {
    if (!restricted(x, 0).is_zero()) out |= VarMask{1} << x;
  }
  return out;
}

uint64_t SparseMultilinearPoly::coeff(VarMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void SparseMultilinearPoly::set_coeff(VarMask m, uint64_t c) {
  if (m & ~full_mask(n_)) throw dimension_error("monomial uses a variable index >= n");
  c %= field_.modulus();
  if (c == 0)
    terms_.erase(m);
  else
    terms_[m] = c;
}

void SparseMultilinearPoly::add_term(VarMask m, uint64_t c) {
  set_coeff(m, field_.add(coeff(m), c % field_.modulus()));
}

void SparseMultilinearPoly::check_compatible(const SparseMultilinearPoly& o) const {
  if (n_ != o.n_)
    throw dimension_error("operands have different variable counts (" + std::to_string(n_) +
                          " vs " + std::to_string(o.n_) + ")");
  if (field_ != o.field_) throw dimension_error("operands live in different prime fields");
}

SparseMultilinearPoly SparseMultilinearPoly::operator+(const SparseMultilinearPoly& o) const {
  check_compatible(o);
  SparseMultilinearPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

SparseMultilinearPoly SparseMultilinearPoly::operator-(const SparseMultilinearPoly& o) const {
  check_compatible(o);
  SparseMultilinearPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, field_.neg(c));
  return r;
}

SparseMultilinearPoly SparseMultilinearPoly::operator*(const SparseMultilinearPoly& o) const {
  check_compatible(o);
  if (var_mask() & o.var_mask())
    throw dimension_error("product factors share variables; result would not be multilinear");
  SparseMultilinearPoly r(n_, field_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma | mb, field_.mul(ca, cb));
  return r;
}

SparseMultilinearPoly SparseMultilinearPoly::scaled(uint64_t c) const {
  SparseMultilinearPoly r(n_, field_);
  c %= field_.modulus();
  if (c == 0) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = field_.mul(v, c);
  return r;
}

bool SparseMultilinearPoly::operator==(const SparseMultilinearPoly& o) const {
  return n_ == o.n_ && field_ == o.field_ && terms_ == o.terms_;
}

uint64_t SparseMultilinearPoly::eval(const Point& pt) const {
  if (pt.size() != n_)
    throw dimension_error("evaluation point has " + std::to_string(pt.size()) +
                          " coordinates, polynomial has " + std::to_string(n_));
  uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    uint64_t t = c;
    VarMask mm = m;
    while (mm && t) {
      uint32_t i = static_cast<uint32_t>(std::countr_zero(mm));
      t = field_.mul(t, pt[i] % field_.modulus());
      mm &= mm - 1;
    }
    acc = field_.add(acc, mm ? 0 : t);
  }
  return acc;
}

SparseMultilinearPoly SparseMultilinearPoly::derivative(uint32_t x) const {
  if (x >= n_) throw dimension_error("derivative variable index >= n");
  SparseMultilinearPoly r(n_, field_);
  VarMask bit = VarMask{1} << x;
  for (const auto& [m, c] : terms_)
    if (m & bit) r.terms_[m & ~bit] = c;
  return r;
}

SparseMultilinearPoly SparseMultilinearPoly::restricted(uint32_t x, uint64_t value) const {
  if (x >= n_) throw dimension_error("restriction variable index >= n");
  SparseMultilinearPoly r(n_, field_);
  VarMask bit = VarMask{1} << x;
  value %= field_.modulus();
  for (const auto& [m, c] : terms_) {
    if (m & bit) {
      if (value != 0) r.add_term(m & ~bit, field_.mul(c, value));
    } else {
      r.add_term(m, c);
    }
  }
  return r;
}

SparseMultilinearPoly SparseMultilinearPoly::derive_restrict(VarMask A, VarMask B) const {
  if (A & B) throw dimension_error("derive/restrict sets must be disjoint");
  SparseMultilinearPoly r = *this;
  for (uint32_t x : mask_to_indices(A)) r = r.derivative(x);
  for (uint32_t x : mask_to_indices(B)) r = r.restricted(x, 0);
  return r;
}

}  // namespace mlhs
