#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mlhs/poly.hpp"

namespace mlhs {

constexpr uint64_t kDefaultTermCap = uint64_t{1} << 20;

// One product gate: a list of factor polynomials with pairwise-disjoint
// variable sets (so the product is multilinear).
using Gate = std::vector<SparseMultilinearPoly>;

void validate_gate(const Gate& g, uint32_t n, const Field& f, size_t gate_index);

/// Sum of products of sparse multilinear polynomials.
class Depth4Formula {
 public:
  Depth4Formula(uint32_t n, const Field& f, std::vector<Gate> gates);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<Gate>& gates() const { return gates_; }

  // Top fan-in.
  size_t fanin() const { return gates_.size(); }

  // Size |Phi|: total leaf count over all factors.
  uint64_t measure() const;

  // Union of syntactic factor supports.
  VarMask syntactic_vars() const;

  uint64_t eval(const Point& pt) const;

  SparseMultilinearPoly expand(uint64_t term_cap = kDefaultTermCap) const;

 private:
  uint32_t n_;
  Field field_;
  std::vector<Gate> gates_;
};

/// Sum of products of linear forms (every factor has degree <= 1).
class Depth3Formula {
 public:
  Depth3Formula(uint32_t n, const Field& f, std::vector<Gate> gates);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<Gate>& gates() const { return gates_; }
  size_t fanin() const { return gates_.size(); }
  uint64_t measure() const;
  VarMask syntactic_vars() const;
  uint64_t eval(const Point& pt) const;
  SparseMultilinearPoly expand(uint64_t term_cap = kDefaultTermCap) const;

  Depth4Formula to_depth4() const { return {n_, field_, gates_}; }

 private:
  uint32_t n_;
  Field field_;
  std::vector<Gate> gates_;
};

// Leaf of a regular formula: coeff * variable, or a bare constant.
struct RegLeaf {
  uint64_t coeff = 0;
  std::optional<uint32_t> var;  // 0-based
};

struct RegNode {
  bool is_leaf = false;
  RegLeaf leaf;
  std::vector<RegNode> children;
};

/// Alternating sum/product tree with an exact fan-in profile
/// (a1, p1, ..., ad, pd, a_{d+1}); odd layers are sums, leaves sit under the
/// last sum layer. Product nodes have children with disjoint variable sets.
class RegularFormula {
 public:
  RegularFormula(uint32_t n, const Field& f, std::vector<uint32_t> profile, RegNode root);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<uint32_t>& profile() const { return profile_; }
  const RegNode& root() const { return root_; }

  // d for a profile of length 2d+1.
  uint32_t depth_d() const { return (static_cast<uint32_t>(profile_.size()) - 1) / 2; }

  // Formal size S = prod(a_i) * prod(p_i).
  uint64_t size() const;

  // Formal degree prod(p_i).
  uint64_t formal_degree() const;

  uint64_t eval(const Point& pt) const;
  SparseMultilinearPoly expand(uint64_t term_cap = kDefaultTermCap) const;
  VarMask syntactic_vars() const;

 private:
  uint32_t n_;
  Field field_;
  std::vector<uint32_t> profile_;
  RegNode root_;
};

using ParsedFormula = std::variant<Depth3Formula, Depth4Formula, RegularFormula>;

uint32_t formula_n(const ParsedFormula& f);
uint64_t formula_eval(const ParsedFormula& f, const Point& pt);
SparseMultilinearPoly formula_expand(const ParsedFormula& f,
                                     uint64_t term_cap = kDefaultTermCap);

/* ---- text format (this module owns the grammar) ---- */

// Sum-of-terms polynomial text: "2*x1*x3 + -1*x2 + 5". Terms are ordered by
// degree then lexicographically; coefficients print in balanced signed form.
std::string poly_to_string(const SparseMultilinearPoly& p);

SparseMultilinearPoly parse_poly(const std::string& text, uint32_t n, const Field& f);

// Renders with a "# class=..." header so parse(print(x)) returns the same
// alternative. A formula with no gates canonicalizes to "(0)".
std::string print_formula(const ParsedFormula& f);

// Accepts optional "# class=..." / "# profile=(...)" headers; otherwise the
// class is inferred from nesting (all factors linear -> d3, flat factor
// polynomials -> d4, deeper alternation -> regular with inferred profile).
// `n` caps the variable universe; pass 0 to size it from the text.
ParsedFormula parse_formula(const std::string& text, const Field& f, uint32_t n = 0);

/* ---- rewrites ---- */

// Divisibility-exposing rewrite: for every variable x dividing the expansion,
// each surviving gate gets x as a standalone factor (a factor whose support
// is the single monomial c*x). Gate count and measure never increase.
Depth4Formula make_simple(const Depth4Formula& f, uint64_t term_cap = kDefaultTermCap);

// True if every variable dividing the expansion appears as a standalone
// factor in every gate.
bool is_simple(const Depth4Formula& f, uint64_t term_cap = kDefaultTermCap);

// Gate-local derivative d_A and restriction |_{B=0}; gates whose derivative
// vanishes (or that restrict to zero) are dropped, so fan-in never grows.
Depth3Formula formula_derive_restrict(const Depth3Formula& f, VarMask A, VarMask B);
Depth4Formula formula_derive_restrict(const Depth4Formula& f, VarMask A, VarMask B);

// Sum of ||g|| over factors g with more than tau variables.
uint64_t delta_far(const Depth4Formula& f, uint32_t tau);

}  // namespace mlhs
