#include "mlhs/reduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "mlhs/errors.hpp"
#include "mlhs/params.hpp"

namespace mlhs {

namespace {

std::optional<SparseMultilinearPoly> try_expand(const Depth3Formula& f,
                                                uint64_t term_cap) {
  try {
    return f.expand(term_cap);
  } catch (const budget_error&) {
    return std::nullopt;
  }
}

std::optional<SparseMultilinearPoly> try_expand(const Depth4Formula& f,
                                                uint64_t term_cap) {
  try {
    return f.expand(term_cap);
  } catch (const budget_error&) {
    return std::nullopt;
  }
}

}  // namespace

Depth3Reduction reduce_depth3(const Depth3Formula& f, double eps,
                              uint64_t term_cap) {
  if (!(eps >= 0.0) || eps > 1.0)
    throw param_error("eps must lie in [0, 1]");
  const uint32_t n = f.n();
  ReductionTrace trace;
  trace.threshold = n == 0 ? 0.0 : npow(n, 1.0 - eps);
  trace.measure_in = f.measure();
  Depth3Formula cur = f;

  auto vars_of = [&](const Depth3Formula& g) -> VarMask {
    if (auto e = try_expand(g, term_cap)) return e->var_mask();
    trace.var_from_expansion = false;
    trace.certified = false;
    return g.syntactic_vars();
  };
  // Masks (intersected with var(f)) of the forms still too wide.
  auto bad_forms = [&](const Depth3Formula& g, VarMask vf) {
    std::vector<VarMask> bads;
    for (const auto& gate : g.gates())
      for (const auto& form : gate) {
        VarMask iv = form.var_mask() & vf;
        if (static_cast<double>(popcount(iv)) > trace.threshold + 1e-9)
          bads.push_back(iv);
      }
    return bads;
  };

  VarMask vf = vars_of(cur);
  std::vector<VarMask> bads = bad_forms(cur, vf);
  trace.initial = bads.size();
  while (!bads.empty()) {
    std::array<uint64_t, kMaxVars> cnt{};
    for (VarMask bm : bads)
      for (uint32_t x : mask_to_indices(bm)) ++cnt[x];
    uint32_t pick = kMaxVars;
    uint64_t best = 0;
    for (uint32_t x = 0; x < n; ++x)
      if (cnt[x] > best) {
        best = cnt[x];
        pick = x;
      }
    if (pick == kMaxVars)
      throw error("internal: wide forms without candidate variables");
    VarMask bit = VarMask{1} << pick;
    trace.A |= bit;
    cur = formula_derive_restrict(cur, bit, 0);
    vf = vars_of(cur);
    std::vector<VarMask> next = bad_forms(cur, vf);
    trace.steps.push_back(
        {pick, ReduceAction::kDerive, bads.size(), next.size()});
    bads = std::move(next);
  }
  trace.measure_out = cur.measure();
  VarMask A = trace.A;
  return {A, std::move(cur), std::move(trace)};
}

Depth4Reduction reduce_depth4(const Depth4Formula& f, uint32_t tau,
                              uint64_t term_cap) {
  if (tau < 1) throw param_error("tau must be at least 1");
  const uint32_t n = f.n();
  ReductionTrace trace;
  trace.threshold = tau;

  // Zero out variables that appear in the gates but not in the polynomial
  // (the substitution changes nothing semantically), then re-simplify. In a
  // clean simple formula every wide factor touches only var*(f).
  auto canonical = [&](Depth4Formula g) {
    g = make_simple(g, term_cap);
    for (;;) {
      auto e = try_expand(g, term_cap);
      if (!e) {
        trace.certified = false;
        trace.var_from_expansion = false;
        return g;
      }
      VarMask junk = g.syntactic_vars() & ~e->var_mask();
      if (!junk) return g;
      trace.junk_removed += popcount(junk);
      g = make_simple(formula_derive_restrict(g, 0, junk), term_cap);
    }
  };

  Depth4Formula cur = canonical(f);
  trace.measure_in = cur.measure();
  uint64_t delta = delta_far(cur, tau);
  trace.initial = delta;
  while (delta > 0) {
    // Weight of wide factors per variable, split into the monomials that a
    // derivative kills (without x) and the ones a restriction kills (with x).
    std::array<uint64_t, kMaxVars> weight{};
    std::array<uint64_t, kMaxVars> without_x{};
    for (const auto& gate : cur.gates())
      for (const auto& factor : gate) {
        if (popcount(factor.var_mask()) <= tau) continue;
        for (uint32_t x : mask_to_indices(factor.var_mask())) {
          weight[x] += factor.sparsity();
          without_x[x] += factor.restricted(x, 0).sparsity();
        }
      }
    VarMask cand;
    if (auto e = try_expand(cur, term_cap)) {
      cand = e->var_star_mask();
    } else {
      trace.certified = false;
      cand = cur.syntactic_vars();
    }
    uint32_t pick = kMaxVars;
    uint64_t best = 0;
    for (uint32_t x : mask_to_indices(cand))
      if (weight[x] > best) {
        best = weight[x];
        pick = x;
      }
    if (pick == kMaxVars)
      throw error(
          "internal: wide factors outside var*(f); simple form violated");
    VarMask bit = VarMask{1} << pick;
    // Derive when the guaranteed drop clears delta*tau/2n, else restrict.
    bool derive = static_cast<unsigned __int128>(without_x[pick]) * 2 * n >
                  static_cast<unsigned __int128>(delta) * tau;
    if (derive) {
      trace.A |= bit;
      cur = canonical(formula_derive_restrict(cur, bit, 0));
    } else {
      trace.B |= bit;
      cur = canonical(formula_derive_restrict(cur, 0, bit));
    }
    uint64_t next = delta_far(cur, tau);
    trace.steps.push_back({pick,
                           derive ? ReduceAction::kDerive
                                  : ReduceAction::kRestrict,
                           delta, next});
    delta = next;
  }
  trace.measure_out = cur.measure();
  VarMask A = trace.A;
  VarMask B = trace.B;
  return {A, B, std::move(cur), std::move(trace)};
}

RegularFormula squeeze(const RegularFormula& psi) {
  const std::vector<uint32_t>& pr = psi.profile();
  if (pr.size() != 5)
    throw param_error("squeeze needs a (a1,p1,a2,p2,1) profile, got length " +
                      std::to_string(pr.size()));
  if (pr[4] != 1)
    throw param_error("squeeze needs bottom sum fan-in 1, got " +
                      std::to_string(pr[4]));
  const uint64_t a1 = pr[0], p1 = pr[1], a2 = pr[2], p2 = pr[3];
  uint64_t top = a1;
  for (uint64_t j = 0; j < p1; ++j) {
    if (top > UINT32_MAX)
      throw budget_error("squeezed top fan-in a1*a2^p1 overflows");
    top *= a2;
  }
  uint64_t width = p1 * p2;
  if (top > UINT32_MAX || width > UINT32_MAX)
    throw budget_error("squeezed profile entries overflow");

  RegNode root;
  for (uint64_t i = 0; i < a1; ++i) {
    const RegNode& prod1 = psi.root().children[i];
    std::vector<uint32_t> choice(p1, 0);
    for (;;) {
      RegNode gate;
      for (uint64_t j = 0; j < p1; ++j) {
        const RegNode& mid_sum = prod1.children[j];
        const RegNode& prod2 = mid_sum.children[choice[j]];
        for (const RegNode& bottom : prod2.children)
          gate.children.push_back(bottom);
      }
      root.children.push_back(std::move(gate));
      int j = static_cast<int>(p1) - 1;
      while (j >= 0 && choice[j] + 1 == a2) choice[j--] = 0;
      if (j < 0) break;
      ++choice[j];
    }
  }
  return RegularFormula(
      psi.n(), psi.field(),
      {static_cast<uint32_t>(top), static_cast<uint32_t>(width), 1},
      std::move(root));
}

Depth4Reduced regular_to_depth4(const RegularFormula& psi, double c,
                                uint64_t term_cap) {
  if (!(c >= 3.0)) throw param_error("case constant c must be >= 3");
  const uint32_t d = psi.depth_d();
  if (d < 2)
    throw param_error("depth reduction needs product depth d >= 2, got " +
                      std::to_string(d));
  const uint32_t n = psi.n();
  const std::vector<uint32_t>& pr = psi.profile();
  const uint64_t S = psi.size();
  const double log2S = std::log2(static_cast<double>(S));
  const double tol = 1e-9;

  // Case 1: total formal degree small enough to expand outright.
  if (static_cast<double>(psi.formal_degree()) <=
      npow(n, 1.0 - std::pow(1.0 / c, d)) + tol) {
    SparseMultilinearPoly poly = psi.expand(term_cap);
    std::vector<Gate> gates;
    if (!poly.is_zero()) gates.push_back({std::move(poly)});
    return {SqueezeCase::kSmallDegree,
            0,
            0.0,
            1,
            S,
            log2S,
            Depth4Formula(n, psi.field(), std::move(gates))};
  }

  // Case 2: first product fan-in large, so the level-2 subformulas have low
  // degree; expand each of them.
  if (static_cast<double>(pr[1]) > npow(n, std::pow(1.0 / c, d)) + tol) {
    std::vector<uint32_t> subprofile(pr.begin() + 2, pr.end());
    std::vector<Gate> gates;
    for (const RegNode& prod : psi.root().children) {
      Gate gate;
      bool zero = false;
      for (const RegNode& sub_root : prod.children) {
        RegularFormula sub(n, psi.field(), subprofile, sub_root);
        SparseMultilinearPoly e = sub.expand(term_cap);
        if (e.is_zero()) {
          zero = true;
          break;
        }
        gate.push_back(std::move(e));
      }
      if (!zero) gates.push_back(std::move(gate));
    }
    return {SqueezeCase::kLargeP1,
            0,
            0.0,
            pr[0],
            S,
            log2S,
            Depth4Formula(n, psi.field(), std::move(gates))};
  }

  // Case 3: split at the first layer t where p_t is small but p_{t+1} is
  // large, flatten everything above it, expand everything below it.
  uint32_t t = 0;
  for (uint32_t i = 1; i + 1 <= d; ++i) {
    double pt_limit = npow(n, std::pow(1.0 / c, d + 1 - i));
    double pnext_limit = npow(n, std::pow(1.0 / c, d - i));
    if (static_cast<double>(pr[2 * i - 1]) <= pt_limit + tol &&
        static_cast<double>(pr[2 * i + 1]) > pnext_limit + tol) {
      t = i;
      break;
    }
  }
  if (t == 0)
    throw error("internal: no split layer found; the case analysis is not "
                "total for this profile");
  const double alpha = std::pow(1.0 / c, d - t) / (c - 1.0);

  using NodeGate = std::vector<const RegNode*>;
  std::function<std::vector<NodeGate>(const RegNode&, uint32_t)> collect_sum;
  std::function<std::vector<NodeGate>(const RegNode&, uint32_t)> collect_prod;
  collect_sum = [&](const RegNode& node, uint32_t block) {
    std::vector<NodeGate> out;
    for (const RegNode& ch : node.children) {
      std::vector<NodeGate> sub = collect_prod(ch, block);
      out.insert(out.end(), std::make_move_iterator(sub.begin()),
                 std::make_move_iterator(sub.end()));
    }
    return out;
  };
  collect_prod = [&](const RegNode& node, uint32_t block) {
    if (block == t + 1) {
      NodeGate gate;
      for (const RegNode& ch : node.children) gate.push_back(&ch);
      return std::vector<NodeGate>{std::move(gate)};
    }
    std::vector<NodeGate> acc{NodeGate{}};
    for (const RegNode& ch : node.children) {
      std::vector<NodeGate> opts = collect_sum(ch, block + 1);
      std::vector<NodeGate> next;
      next.reserve(acc.size() * opts.size());
      for (const NodeGate& base : acc)
        for (const NodeGate& opt : opts) {
          if (next.size() >= term_cap)
            throw budget_error(
                "depth reduction exceeds the summand budget; raise max_terms");
          NodeGate merged = base;
          merged.insert(merged.end(), opt.begin(), opt.end());
          next.push_back(std::move(merged));
        }
      acc = std::move(next);
    }
    return acc;
  };
  std::vector<NodeGate> node_gates = collect_sum(psi.root(), 1);
  const uint64_t M = node_gates.size();

  std::vector<uint32_t> subprofile(pr.begin() + 2 * (t + 1), pr.end());
  std::map<const RegNode*, SparseMultilinearPoly> cache;
  auto expand_bottom = [&](const RegNode* p) -> const SparseMultilinearPoly& {
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    RegularFormula sub(n, psi.field(), subprofile, *p);
    return cache.emplace(p, sub.expand(term_cap)).first->second;
  };
  std::vector<Gate> gates;
  for (const NodeGate& ng : node_gates) {
    Gate gate;
    bool zero = false;
    for (const RegNode* p : ng) {
      const SparseMultilinearPoly& e = expand_bottom(p);
      if (e.is_zero()) {
        zero = true;
        break;
      }
      gate.push_back(e);
    }
    if (!zero) gates.push_back(std::move(gate));
  }
  return {SqueezeCase::kSplit,
          t,
          alpha,
          M,
          S,
          npow(n, alpha) * log2S,
          Depth4Formula(n, psi.field(), std::move(gates))};
}

}  // namespace mlhs
