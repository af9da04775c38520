#include "mlhs/oracle.hpp"

#include <numeric>
#include <set>

#include "mlhs/bits.hpp"
#include "mlhs/errors.hpp"

namespace mlhs {

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

uint64_t sat_pow(uint64_t base, uint64_t exp) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == UINT64_MAX) break;
  }
  return r;
}

}  // namespace

GridVerdict grid_pit(const std::function<uint64_t(const Point&)>& f,
                     uint32_t n, uint32_t d, const Field& field,
                     uint64_t max_points) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("grid oracle needs 1.." + std::to_string(kMaxVars) +
                          " variables, got " + std::to_string(n));
  if (static_cast<uint64_t>(d) + 1 > field.modulus())
    throw param_error("grid oracle needs d+1 distinct field elements");
  uint64_t total = sat_pow(d + 1, n);
  if (total > max_points)
    throw budget_error("grid oracle would evaluate " + std::to_string(total) +
                       " points; raise max_points (" +
                       std::to_string(max_points) + ")");
  GridVerdict v;
  Point cur(n, 0);
  for (;;) {
    ++v.eval_count;
    if (f(cur) != 0) {
      v.is_zero = false;
      v.witness = cur;
      return v;
    }
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && cur[i] == d) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  v.is_zero = true;
  return v;
}

Depth3Formula gen_depth3(Rng& rng, uint32_t n, uint32_t gates,
                         const Field& field) {
  if (n == 0 || n > kMaxVars)
    throw param_error("generator needs 1..64 variables");
  if (gates == 0) throw param_error("generator needs at least one gate");
  std::vector<Gate> gs;
  for (uint32_t g = 0; g < gates; ++g) {
    std::vector<uint32_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    rng.shuffle(vars);
    size_t pos = 0;
    uint32_t nforms =
        1 + static_cast<uint32_t>(rng.below(std::min<uint64_t>(3, n)));
    Gate gate;
    for (uint32_t t = 0; t < nforms; ++t) {
      size_t remaining = vars.size() - pos;
      if (remaining == 0) {
        gate.push_back(SparseMultilinearPoly::constant(
            n, field, rng.field_nonzero(field)));
        continue;
      }
      size_t take = 1 + rng.below(std::min<uint64_t>(remaining, 2));
      if (rng.chance(1, 8)) take = remaining;  // occasional wide form
      SparseMultilinearPoly form = SparseMultilinearPoly::zero(n, field);
      for (size_t i = 0; i < take; ++i)
        form.add_term(VarMask{1} << vars[pos++], rng.field_nonzero(field));
      if (rng.chance(1, 2)) form.add_term(0, rng.field_elem(field));
      gate.push_back(std::move(form));
    }
    gs.push_back(std::move(gate));
  }
  return {n, field, std::move(gs)};
}

Depth4Formula gen_depth4(Rng& rng, uint32_t n, uint32_t gates,
                         uint32_t max_sparsity, const Field& field) {
  if (n == 0 || n > kMaxVars)
    throw param_error("generator needs 1..64 variables");
  if (gates == 0) throw param_error("generator needs at least one gate");
  if (max_sparsity == 0) throw param_error("sparsity cap must be positive");
  std::vector<Gate> gs;
  for (uint32_t g = 0; g < gates; ++g) {
    std::vector<uint32_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    rng.shuffle(vars);
    size_t pos = 0;
    uint32_t nfactors =
        1 + static_cast<uint32_t>(rng.below(std::min<uint64_t>(3, n)));
    Gate gate;
    for (uint32_t t = 0; t < nfactors; ++t) {
      size_t remaining = vars.size() - pos;
      if (remaining == 0) {
        gate.push_back(SparseMultilinearPoly::constant(
            n, field, rng.field_nonzero(field)));
        continue;
      }
      size_t block = 1 + rng.below(std::min<uint64_t>(remaining, 3));
      std::vector<uint32_t> block_vars(vars.begin() + pos,
                                       vars.begin() + pos + block);
      pos += block;
      uint64_t want = 1 + rng.below(max_sparsity);
      std::set<VarMask> monos;
      for (uint64_t a = 0; a < 4 * want && monos.size() < want; ++a) {
        VarMask m = 0;
        for (uint32_t x : block_vars)
          if (rng.chance(1, 2)) m |= VarMask{1} << x;
        monos.insert(m);
      }
      SparseMultilinearPoly factor = SparseMultilinearPoly::zero(n, field);
      for (VarMask m : monos) factor.add_term(m, rng.field_nonzero(field));
      gate.push_back(std::move(factor));
    }
    gs.push_back(std::move(gate));
  }
  return {n, field, std::move(gs)};
}

RegularFormula gen_regular(Rng& rng, uint32_t n,
                           const std::vector<uint32_t>& profile,
                           const Field& field) {
  if (profile.empty() || profile.size() % 2 == 0)
    throw param_error("regular profile must have odd length");
  const size_t last = profile.size() - 1;
  std::function<RegNode(size_t, VarMask)> build = [&](size_t layer,
                                                      VarMask avail) {
    RegNode node;
    uint32_t fan = profile[layer];
    if (layer == last) {
      std::vector<uint32_t> vs = mask_to_indices(avail);
      for (uint32_t i = 0; i < fan; ++i) {
        RegNode leaf;
        leaf.is_leaf = true;
        if (!vs.empty() && rng.chance(7, 8)) {
          leaf.leaf.var = vs[rng.below(vs.size())];
          leaf.leaf.coeff = rng.field_nonzero(field);
        } else {
          leaf.leaf.var = std::nullopt;
          leaf.leaf.coeff = rng.field_nonzero(field);
        }
        node.children.push_back(std::move(leaf));
      }
      return node;
    }
    if (layer % 2 == 0) {  // sum: children share the variable set
      for (uint32_t i = 0; i < fan; ++i)
        node.children.push_back(build(layer + 1, avail));
    } else {  // product: children get disjoint variable sets
      std::vector<VarMask> parts(fan, 0);
      for (uint32_t x : mask_to_indices(avail))
        parts[rng.below(fan)] |= VarMask{1} << x;
      for (uint32_t i = 0; i < fan; ++i)
        node.children.push_back(build(layer + 1, parts[i]));
    }
    return node;
  };
  return RegularFormula(n, field, profile, build(0, full_mask(n)));
}

ParsedFormula gen_formula(const std::string& cls, const GenParams& params,
                          uint64_t seed, const Field& field) {
  Rng rng(seed);
  if (cls == "d3") return gen_depth3(rng, params.n, params.gates, field);
  if (cls == "d4")
    return gen_depth4(rng, params.n, params.gates, params.max_sparsity, field);
  if (cls == "regular")
    return gen_regular(rng, params.n, params.profile, field);
  throw param_error("unknown formula class '" + cls +
                    "' (expected d3, d4 or regular)");
}

namespace {

// Negate the polynomial computed by a gate (flip one factor's coefficients).
Gate negated_gate(const Gate& g, const Field& field) {
  Gate out = g;
  out[0] = out[0].scaled(field.neg(1));
  return out;
}

// Negate the polynomial computed by a regular node: at sums negate every
// child, at products negate exactly one child.
RegNode negated_reg(const RegNode& node, size_t layer, size_t last,
                    const Field& field) {
  RegNode out = node;
  if (layer == last) {
    for (RegNode& ch : out.children) ch.leaf.coeff = field.neg(ch.leaf.coeff);
    return out;
  }
  if (layer % 2 == 0) {
    for (size_t i = 0; i < out.children.size(); ++i)
      out.children[i] = negated_reg(node.children[i], layer + 1, last, field);
  } else {
    out.children[0] = negated_reg(node.children[0], layer + 1, last, field);
  }
  return out;
}

void push_item(Corpus& corpus, std::string label, ParsedFormula formula) {
  SparseMultilinearPoly e = formula_expand(formula);
  bool nz = !e.is_zero();
  corpus.items.push_back(
      {std::move(label), std::move(formula), std::move(e), nz});
}

SparseMultilinearPoly linear_form(uint32_t n, const Field& field, VarMask vars,
                                  uint64_t coeff) {
  SparseMultilinearPoly p = SparseMultilinearPoly::zero(n, field);
  for (uint32_t x : mask_to_indices(vars)) p.add_term(VarMask{1} << x, coeff);
  return p;
}

void add_adversarial(Corpus& corpus, const std::string& cls,
                     const GenParams& params, const Field& field) {
  const uint32_t n = params.n;
  const uint64_t minus1 = field.neg(1);
  if (cls == "d3" && n >= 3) {
    SparseMultilinearPoly x1 = SparseMultilinearPoly::monomial(n, field, 1, 1);
    SparseMultilinearPoly x3 = SparseMultilinearPoly::monomial(n, field, 4, 1);
    SparseMultilinearPoly x1px2 = linear_form(n, field, 0b11, 1);
    push_item(corpus, "adv-cancel-zero",
              Depth3Formula(n, field,
                            {{x1px2, x3}, {x1px2.scaled(minus1), x3}}));
    push_item(corpus, "adv-cancel-var",
              Depth3Formula(n, field, {{x1px2, x3}, {x1, x3.scaled(minus1)}}));
    push_item(corpus, "adv-wide-form",
              Depth3Formula(n, field, {{linear_form(n, field, full_mask(n), 1)}}));
    push_item(
        corpus, "adv-wide-times-leaf",
        Depth3Formula(n, field,
                      {{linear_form(n, field, full_mask(n - 1), 1),
                        SparseMultilinearPoly::monomial(
                            n, field, VarMask{1} << (n - 1), 1)}}));
  }
  if (cls == "d4" && n >= 3) {
    SparseMultilinearPoly x1x2px3 = SparseMultilinearPoly::zero(n, field);
    x1x2px3.add_term(0b011, 1);
    x1x2px3.add_term(0b100, 1);
    SparseMultilinearPoly x1mx3 = SparseMultilinearPoly::zero(n, field);
    x1mx3.add_term(0b001, 1);
    x1mx3.add_term(0b100, minus1);
    push_item(corpus, "adv-cancel-zero",
              Depth4Formula(n, field,
                            {{x1x2px3}, {x1x2px3.scaled(minus1)}}));
    push_item(corpus, "adv-cancel-var",
              Depth4Formula(n, field, {{x1x2px3}, {x1mx3}}));
    SparseMultilinearPoly divisor_factor = SparseMultilinearPoly::zero(n, field);
    divisor_factor.add_term(0b011, 1);  // x1*x2 + x1: x1 divides the factor
    divisor_factor.add_term(0b001, 1);
    SparseMultilinearPoly x3p1 = SparseMultilinearPoly::zero(n, field);
    x3p1.add_term(0b100, 1);
    x3p1.add_term(0, 1);
    push_item(corpus, "adv-divisor-in-factor",
              Depth4Formula(n, field, {{divisor_factor, x3p1}}));
    if (n >= 4) {
      SparseMultilinearPoly wide = SparseMultilinearPoly::zero(n, field);
      wide.add_term(0b0011, 1);
      wide.add_term(0b1100, 1);
      push_item(corpus, "adv-wide-factor", Depth4Formula(n, field, {{wide}}));
    }
  }
  if (cls == "regular" && !params.profile.empty() && params.profile[0] == 2) {
    Rng rng(corpus.seed ^ 0x5eedULL);
    RegularFormula base = gen_regular(rng, n, params.profile, field);
    RegNode root = base.root();
    root.children[1] =
        negated_reg(root.children[0], 1, params.profile.size() - 1, field);
    push_item(corpus, "adv-cancel-zero",
              RegularFormula(n, field, params.profile, std::move(root)));
  }
}

}  // namespace

Corpus make_corpus(const std::string& cls, const GenParams& params,
                   uint64_t seed, uint32_t nonzero_count, const Field& field) {
  Corpus corpus;
  corpus.cls = cls;
  corpus.n = params.n;
  corpus.seed = seed;
  Rng rng(seed);
  uint32_t made = 0;
  uint64_t attempts = 0;
  while (made < nonzero_count) {
    if (++attempts > 20ull * nonzero_count + 100)
      throw error("corpus generation keeps producing zero polynomials");
    ParsedFormula f =
        cls == "d3"
            ? ParsedFormula(gen_depth3(
                  rng, params.n,
                  1 + static_cast<uint32_t>(rng.below(params.gates)), field))
        : cls == "d4"
            ? ParsedFormula(gen_depth4(
                  rng, params.n,
                  1 + static_cast<uint32_t>(rng.below(params.gates)),
                  params.max_sparsity, field))
            : ParsedFormula(gen_regular(rng, params.n, params.profile, field));
    SparseMultilinearPoly e = formula_expand(f);
    if (e.is_zero()) continue;
    corpus.items.push_back({"random-" + std::to_string(made), std::move(f),
                            std::move(e), true});
    ++made;
  }
  uint32_t zeros = std::max<uint32_t>(2, nonzero_count / 50);
  for (uint32_t z = 0; z < zeros; ++z) {
    if (cls == "d3") {
      Depth3Formula h = gen_depth3(rng, params.n, 1 + rng.below(2), field);
      std::vector<Gate> gs = h.gates();
      size_t cnt = gs.size();
      for (size_t i = 0; i < cnt; ++i)
        gs.push_back(negated_gate(gs[i], field));
      push_item(corpus, "planted-zero-" + std::to_string(z),
                Depth3Formula(params.n, field, std::move(gs)));
    } else if (cls == "d4") {
      Depth4Formula h =
          gen_depth4(rng, params.n, 1 + rng.below(2), params.max_sparsity,
                     field);
      std::vector<Gate> gs = h.gates();
      size_t cnt = gs.size();
      for (size_t i = 0; i < cnt; ++i)
        gs.push_back(negated_gate(gs[i], field));
      push_item(corpus, "planted-zero-" + std::to_string(z),
                Depth4Formula(params.n, field, std::move(gs)));
    } else if (!params.profile.empty() && params.profile[0] == 2) {
      RegularFormula base = gen_regular(rng, params.n, params.profile, field);
      RegNode root = base.root();
      root.children[1] = negated_reg(root.children[0], 1,
                                     params.profile.size() - 1, field);
      push_item(corpus, "planted-zero-" + std::to_string(z),
                RegularFormula(params.n, field, params.profile,
                               std::move(root)));
    }
  }
  add_adversarial(corpus, cls, params, field);
  return corpus;
}

}  // namespace mlhs
