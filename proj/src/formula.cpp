#include "mlhs/formula.hpp"

#include <algorithm>

namespace mlhs {

void validate_gate(const Gate& g, uint32_t n, const Field& f, size_t gate_index) {
  VarMask seen = 0;
  for (const auto& factor : g) {
    if (factor.n() != n || factor.field() != f)
      throw dimension_error("gate " + std::to_string(gate_index + 1) +
                            ": factor has mismatched n or field");
    VarMask v = factor.var_mask();
    if (v & seen)
      throw dimension_error("gate " + std::to_string(gate_index + 1) +
                            ": factors share variables (multilinearity violation)");
    seen |= v;
  }
}

namespace {

uint64_t gates_measure(const std::vector<Gate>& gates) {
  uint64_t total = 0;
  for (const auto& g : gates)
    for (const auto& factor : g) total += factor.leaves();
  return total;
}

VarMask gates_vars(const std::vector<Gate>& gates) {
  VarMask u = 0;
  for (const auto& g : gates)
    for (const auto& factor : g) u |= factor.var_mask();
  return u;
}

uint64_t gates_eval(const std::vector<Gate>& gates, const Field& f, const Point& pt) {
  uint64_t acc = 0;
  for (const auto& g : gates) {
    uint64_t prod = 1;
    for (const auto& factor : g) {
      prod = f.mul(prod, factor.eval(pt));
      if (prod == 0) break;
    }
    acc = f.add(acc, prod);
  }
  return acc;
}

SparseMultilinearPoly gates_expand(const std::vector<Gate>& gates, uint32_t n, const Field& f,
                                   uint64_t term_cap) {
  SparseMultilinearPoly sum(n, f);
  for (const auto& g : gates) {
    SparseMultilinearPoly prod = SparseMultilinearPoly::constant(n, f, 1);
    for (const auto& factor : g) {
      prod = prod * factor;
      if (prod.sparsity() > term_cap)
        throw budget_error("expansion exceeds term cap " + std::to_string(term_cap));
    }
    sum = sum + prod;
    if (sum.sparsity() > term_cap)
      throw budget_error("expansion exceeds term cap " + std::to_string(term_cap));
  }
  return sum;
}

}  // namespace

Depth4Formula::Depth4Formula(uint32_t n, const Field& f, std::vector<Gate> gates)
    : n_(n), field_(f), gates_(std::move(gates)) {
  if (n > kMaxVars) throw param_error("variable count exceeds supported maximum");
  for (size_t i = 0; i < gates_.size(); ++i) validate_gate(gates_[i], n_, field_, i);
}

uint64_t Depth4Formula::measure() const { return gates_measure(gates_); }
VarMask Depth4Formula::syntactic_vars() const { return gates_vars(gates_); }
uint64_t Depth4Formula::eval(const Point& pt) const { return gates_eval(gates_, field_, pt); }
SparseMultilinearPoly Depth4Formula::expand(uint64_t term_cap) const {
  return gates_expand(gates_, n_, field_, term_cap);
}

Depth3Formula::Depth3Formula(uint32_t n, const Field& f, std::vector<Gate> gates)
    : n_(n), field_(f), gates_(std::move(gates)) {
  if (n > kMaxVars) throw param_error("variable count exceeds supported maximum");
  for (size_t i = 0; i < gates_.size(); ++i) {
    validate_gate(gates_[i], n_, field_, i);
    for (const auto& factor : gates_[i])
      for (const auto& [m, c] : factor.terms()) {
        (void)c;
        if (popcount(m) > 1)
          throw dimension_error("gate " + std::to_string(i + 1) +
                                ": factor is not a linear form");
      }
  }
}

uint64_t Depth3Formula::measure() const { return gates_measure(gates_); }
VarMask Depth3Formula::syntactic_vars() const { return gates_vars(gates_); }
uint64_t Depth3Formula::eval(const Point& pt) const { return gates_eval(gates_, field_, pt); }
SparseMultilinearPoly Depth3Formula::expand(uint64_t term_cap) const {
  return gates_expand(gates_, n_, field_, term_cap);
}

/* ---- regular formulas ---- */

namespace {

// Validates the alternating tree against the profile; returns the syntactic
// variable mask of the subtree. `layer` indexes the profile.
VarMask validate_reg(const RegNode& node, const std::vector<uint32_t>& profile, size_t layer,
                     uint32_t n) {
  size_t last = profile.size() - 1;
  if (layer > last) throw param_error("regular formula tree deeper than its profile");
  if (node.is_leaf)
    throw param_error("regular formula leaf above the bottom sum layer");
  if (node.children.size() != profile[layer])
    throw param_error("regular formula fan-in mismatch at layer " + std::to_string(layer + 1) +
                      ": expected " + std::to_string(profile[layer]) + ", found " +
                      std::to_string(node.children.size()));
  bool is_sum = layer % 2 == 0;
  VarMask total = 0;
  for (const auto& ch : node.children) {
    VarMask v;
    if (layer == last) {
      if (!ch.is_leaf) throw param_error("regular formula bottom sum must hold leaves");
      if (ch.leaf.var && *ch.leaf.var >= n)
        throw dimension_error("regular formula leaf variable index >= n");
      v = ch.leaf.var ? VarMask{1} << *ch.leaf.var : 0;
    } else {
      v = validate_reg(ch, profile, layer + 1, n);
    }
    if (!is_sum && (v & total))
      throw dimension_error("regular formula product children share variables");
    total |= v;
  }
  return total;
}

SparseMultilinearPoly expand_reg(const RegNode& node, size_t layer, size_t last, uint32_t n,
                                 const Field& f, uint64_t term_cap) {
  if (node.is_leaf) {
    if (node.leaf.var)
      return SparseMultilinearPoly::monomial(n, f, VarMask{1} << *node.leaf.var, node.leaf.coeff);
    return SparseMultilinearPoly::constant(n, f, node.leaf.coeff);
  }
  bool is_sum = layer % 2 == 0;
  SparseMultilinearPoly acc =
      is_sum ? SparseMultilinearPoly::zero(n, f) : SparseMultilinearPoly::constant(n, f, 1);
  for (const auto& ch : node.children) {
    auto sub = expand_reg(ch, layer + 1, last, n, f, term_cap);
    acc = is_sum ? acc + sub : acc * sub;
    if (acc.sparsity() > term_cap)
      throw budget_error("expansion exceeds term cap " + std::to_string(term_cap));
  }
  return acc;
}

uint64_t eval_reg(const RegNode& node, size_t layer, const Field& f, const Point& pt) {
  if (node.is_leaf) {
    uint64_t v = node.leaf.coeff % f.modulus();
    if (node.leaf.var) v = f.mul(v, pt[*node.leaf.var] % f.modulus());
    return v;
  }
  bool is_sum = layer % 2 == 0;
  uint64_t acc = is_sum ? 0 : 1;
  for (const auto& ch : node.children) {
    uint64_t v = eval_reg(ch, layer + 1, f, pt);
    acc = is_sum ? f.add(acc, v) : f.mul(acc, v);
  }
  return acc;
}

VarMask vars_reg(const RegNode& node) {
  if (node.is_leaf) return node.leaf.var ? VarMask{1} << *node.leaf.var : 0;
  VarMask u = 0;
  for (const auto& ch : node.children) u |= vars_reg(ch);
  return u;
}

}  // namespace

RegularFormula::RegularFormula(uint32_t n, const Field& f, std::vector<uint32_t> profile,
                               RegNode root)
    : n_(n), field_(f), profile_(std::move(profile)), root_(std::move(root)) {
  if (n > kMaxVars) throw param_error("variable count exceeds supported maximum");
  if (profile_.empty() || profile_.size() % 2 == 0)
    throw param_error("regular profile must have odd length (a1,p1,...,ad,pd,a_{d+1})");
  for (uint32_t v : profile_)
    if (v == 0) throw param_error("regular profile entries must be positive");
  validate_reg(root_, profile_, 0, n_);
}

uint64_t RegularFormula::size() const {
  uint64_t s = 1;
  for (uint32_t v : profile_) s *= v;
  return s;
}

uint64_t RegularFormula::formal_degree() const {
  uint64_t d = 1;
  for (size_t i = 1; i < profile_.size(); i += 2) d *= profile_[i];
  return d;
}

uint64_t RegularFormula::eval(const Point& pt) const {
  if (pt.size() != n_) throw dimension_error("evaluation point size mismatch");
  return eval_reg(root_, 0, field_, pt);
}

SparseMultilinearPoly RegularFormula::expand(uint64_t term_cap) const {
  return expand_reg(root_, 0, profile_.size() - 1, n_, field_, term_cap);
}

VarMask RegularFormula::syntactic_vars() const { return vars_reg(root_); }

uint32_t formula_n(const ParsedFormula& f) {
  return std::visit([](const auto& x) { return x.n(); }, f);
}

uint64_t formula_eval(const ParsedFormula& f, const Point& pt) {
  return std::visit([&](const auto& x) { return x.eval(pt); }, f);
}

SparseMultilinearPoly formula_expand(const ParsedFormula& f, uint64_t term_cap) {
  return std::visit([&](const auto& x) { return x.expand(term_cap); }, f);
}

/* ---- rewrites ---- */

namespace {

// Is the factor a standalone occurrence of x (single monomial c*x)?
bool is_standalone(const SparseMultilinearPoly& factor, uint32_t x) {
  return factor.sparsity() == 1 && factor.terms().begin()->first == (VarMask{1} << x);
}

std::vector<uint32_t> divisor_vars(const Depth4Formula& f, uint64_t term_cap) {
  std::vector<uint32_t> out;
  try {
    auto poly = f.expand(term_cap);
    for (uint32_t x : mask_to_indices(poly.var_mask()))
      if (poly.restricted(x, 0).is_zero()) out.push_back(x);
  } catch (const budget_error&) {
    // Formal fallback: x divides f whenever every gate has a factor all of
    // whose monomials contain x (sufficient, not complete).
    for (uint32_t x = 0; x < f.n(); ++x) {
      VarMask bit = VarMask{1} << x;
      bool all_gates = !f.gates().empty();
      for (const auto& g : f.gates()) {
        bool gate_divisible = false;
        for (const auto& factor : g) {
          if (factor.is_zero()) continue;
          bool every_term = true;
          for (const auto& [m, c] : factor.terms()) {
            (void)c;
            if (!(m & bit)) {
              every_term = false;
              break;
            }
          }
          if (every_term) {
            gate_divisible = true;
            break;
          }
        }
        if (!gate_divisible) {
          all_gates = false;
          break;
        }
      }
      if (all_gates) out.push_back(x);
    }
  }
  return out;
}

}  // namespace

Depth4Formula make_simple(const Depth4Formula& f, uint64_t term_cap) {
  auto divisors = divisor_vars(f, term_cap);
  std::vector<Gate> gates = f.gates();
  const Field& fld = f.field();
  for (uint32_t x : divisors) {
    VarMask bit = VarMask{1} << x;
    std::vector<Gate> next;
    for (auto& g : gates) {
      size_t jx = g.size();
      for (size_t j = 0; j < g.size(); ++j)
        if (g[j].var_mask() & bit) {
          jx = j;
          break;
        }
      if (jx == g.size()) continue;  // gate has no x: cancelled against the rest
      Gate ng;
      for (size_t j = 0; j < g.size(); ++j) {
        if (j != jx) {
          ng.push_back(g[j]);
          continue;
        }
        if (is_standalone(g[j], x)) {
          ng.push_back(g[j]);
          continue;
        }
        auto gx = g[j].derivative(x);  // f_ij = x*gx + h; h drops out of the sum
        if (gx.is_constant()) {
          ng.push_back(SparseMultilinearPoly::monomial(f.n(), fld, bit, gx.coeff(0)));
        } else {
          ng.push_back(SparseMultilinearPoly::monomial(f.n(), fld, bit, 1));
          ng.push_back(gx);
        }
      }
      next.push_back(std::move(ng));
    }
    gates = std::move(next);
  }
  return {f.n(), fld, std::move(gates)};
}

bool is_simple(const Depth4Formula& f, uint64_t term_cap) {
  for (uint32_t x : divisor_vars(f, term_cap)) {
    for (const auto& g : f.gates()) {
      bool found = false;
      for (const auto& factor : g)
        if (is_standalone(factor, x)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  }
  return true;
}

namespace {

std::vector<Gate> derive_restrict_gates(const std::vector<Gate>& gates, VarMask A, VarMask B) {
  if (A & B) throw dimension_error("derive/restrict sets must be disjoint");
  std::vector<Gate> cur = gates;
  for (uint32_t x : mask_to_indices(A)) {
    VarMask bit = VarMask{1} << x;
    std::vector<Gate> next;
    for (const auto& g : cur) {
      size_t jx = g.size();
      for (size_t j = 0; j < g.size(); ++j)
        if (g[j].var_mask() & bit) {
          jx = j;
          break;
        }
      if (jx == g.size()) continue;  // derivative of this gate is zero
      Gate ng = g;
      ng[jx] = ng[jx].derivative(x);
      next.push_back(std::move(ng));
    }
    cur = std::move(next);
  }
  for (uint32_t x : mask_to_indices(B)) {
    VarMask bit = VarMask{1} << x;
    std::vector<Gate> next;
    for (const auto& g : cur) {
      Gate ng;
      bool zero_gate = false;
      for (const auto& factor : g) {
        if (factor.var_mask() & bit) {
          auto r = factor.restricted(x, 0);
          if (r.is_zero()) {
            zero_gate = true;
            break;
          }
          ng.push_back(std::move(r));
        } else {
          ng.push_back(factor);
        }
      }
      if (!zero_gate) next.push_back(std::move(ng));
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace

Depth3Formula formula_derive_restrict(const Depth3Formula& f, VarMask A, VarMask B) {
  return {f.n(), f.field(), derive_restrict_gates(f.gates(), A, B)};
}

Depth4Formula formula_derive_restrict(const Depth4Formula& f, VarMask A, VarMask B) {
  return {f.n(), f.field(), derive_restrict_gates(f.gates(), A, B)};
}

uint64_t delta_far(const Depth4Formula& f, uint32_t tau) {
  if (tau < 1) throw param_error("delta_far requires tau >= 1");
  uint64_t total = 0;
  for (const auto& g : f.gates())
    for (const auto& factor : g)
      if (popcount(factor.var_mask()) > tau) total += factor.sparsity();
  return total;
}

}  // namespace mlhs
