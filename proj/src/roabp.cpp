#include "mlhs/roabp.hpp"

#include <algorithm>

namespace mlhs {

namespace {

void check_order(const std::vector<uint32_t>& order, uint32_t n) {
  if (order.size() != n) throw param_error("variable order must list all n variables");
  std::vector<bool> seen(n, false);
  for (uint32_t v : order) {
    if (v >= n || seen[v]) throw param_error("variable order is not a permutation of 1..n");
    seen[v] = true;
  }
}

uint64_t sat_pow(uint64_t base, uint64_t e) {
  uint64_t r = 1;
  while (e--) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace

Roabp::Roabp(uint32_t n, const Field& f, std::vector<uint32_t> order,
             std::vector<uint32_t> layer_sizes, std::vector<std::vector<RoabpEdge>> layer_edges)
    : n_(n),
      field_(f),
      order_(std::move(order)),
      layer_sizes_(std::move(layer_sizes)),
      layer_edges_(std::move(layer_edges)) {
  check_order(order_, n_);
  if (layer_sizes_.size() != n_ + 1 || layer_edges_.size() != n_)
    throw param_error("ROABP needs n+1 node layers and n edge layers");
  if (layer_sizes_.front() != 1 || layer_sizes_.back() != 1)
    throw param_error("ROABP must have a single source and a single sink");
  for (uint32_t l = 0; l < n_; ++l)
    for (const auto& e : layer_edges_[l])
      if (e.from >= layer_sizes_[l] || e.to >= layer_sizes_[l + 1])
        throw param_error("ROABP edge endpoint out of range at layer " + std::to_string(l + 1));
}

uint32_t Roabp::width() const {
  uint32_t w = 0;
  for (uint32_t s : layer_sizes_) w = std::max(w, s);
  return w;
}

uint64_t Roabp::eval(const Point& pt) const {
  if (pt.size() != n_) throw dimension_error("evaluation point size mismatch");
  std::vector<uint64_t> vec(layer_sizes_[0], 0);
  vec[0] = 1;
  for (uint32_t l = 0; l < n_; ++l) {
    uint64_t x = pt[order_[l]] % field_.modulus();
    std::vector<uint64_t> next(layer_sizes_[l + 1], 0);
    for (const auto& e : layer_edges_[l]) {
      if (vec[e.from] == 0) continue;
      uint64_t label = 0;  // Horner
      for (size_t i = e.coeffs.size(); i-- > 0;) label = field_.add(field_.mul(label, x), e.coeffs[i]);
      next[e.to] = field_.add(next[e.to], field_.mul(vec[e.from], label));
    }
    vec = std::move(next);
  }
  return vec.empty() ? 0 : vec[0];
}

RoabpBuild from_sparse_products(const Depth4Formula& f, std::vector<uint32_t> order,
                                std::optional<uint64_t> k_cap, std::optional<uint64_t> s_cap,
                                uint64_t term_cap) {
  uint32_t n = f.n();
  if (n == 0) throw param_error("ROABP construction needs at least one variable");
  const Field& fld = f.field();
  if (order.empty())
    for (uint32_t i = 0; i < n; ++i) order.push_back(i);
  check_order(order, n);

  uint64_t k_meas = 0, s_meas = 0;
  for (size_t gi = 0; gi < f.gates().size(); ++gi) {
    const auto& g = f.gates()[gi];
    uint64_t multi = 0;
    for (const auto& factor : g) {
      if (popcount(factor.var_mask()) > 1) ++multi;
      s_meas = std::max(s_meas, factor.sparsity());
      if (s_cap && factor.sparsity() > *s_cap)
        throw param_error("gate " + std::to_string(gi + 1) + ": factor sparsity " +
                          std::to_string(factor.sparsity()) + " exceeds cap s=" +
                          std::to_string(*s_cap));
    }
    k_meas = std::max(k_meas, multi);
    if (k_cap && multi > *k_cap)
      throw param_error("gate " + std::to_string(gi + 1) + ": " + std::to_string(multi) +
                        " multi-variable factors exceed cap k=" + std::to_string(*k_cap));
  }
  s_meas = std::max<uint64_t>(s_meas, 1);

  // Branch = (coefficient, monomial mask, per-variable affine label).
  struct Branch {
    uint64_t c0;
    VarMask mono;
    std::vector<std::pair<uint64_t, uint64_t>> uni;  // var -> (const, lin), dense by var
  };
  std::vector<Branch> branches;
  for (const auto& g : f.gates()) {
    uint64_t cgate = 1;
    std::vector<std::pair<uint64_t, uint64_t>> uni(n, {0, 0});
    std::vector<bool> has_uni(n, false);
    SparseMultilinearPoly multi_prod = SparseMultilinearPoly::constant(n, fld, 1);
    bool dead = false;
    for (const auto& factor : g) {
      VarMask v = factor.var_mask();
      uint32_t deg = popcount(v);
      if (deg == 0) {
        uint64_t c = factor.coeff(0);
        if (c == 0) {
          dead = true;
          break;
        }
        cgate = fld.mul(cgate, c);
      } else if (deg == 1) {
        uint32_t x = mask_to_indices(v)[0];
        uni[x] = {factor.coeff(0), factor.coeff(VarMask{1} << x)};
        has_uni[x] = true;
      } else {
        multi_prod = multi_prod * factor;
        if (multi_prod.sparsity() > term_cap)
          throw budget_error("gate expansion exceeds term cap " + std::to_string(term_cap));
      }
    }
    if (dead) continue;
    for (const auto& [mono, c] : multi_prod.terms()) {
      Branch b;
      b.c0 = fld.mul(cgate, c);
      b.mono = mono;
      b.uni.assign(n, {0, 0});
      for (uint32_t x = 0; x < n; ++x)
        if (has_uni[x]) b.uni[x] = uni[x];
        else if (!has_var(mono, x)) b.uni[x] = {1, 0};  // constant-1 filler
      branches.push_back(std::move(b));
    }
  }

  auto label_for = [&](const Branch& b, uint32_t pos) {
    uint32_t v = order[pos];
    std::vector<uint64_t> coeffs;
    if (has_var(b.mono, v))
      coeffs = {0, 1};
    else
      coeffs = {b.uni[v].first, b.uni[v].second};
    if (pos == 0)
      for (auto& c : coeffs) c = fld.mul(c, b.c0);
    return coeffs;
  };

  uint32_t B = static_cast<uint32_t>(branches.size());
  std::vector<uint32_t> sizes(n + 1, B);
  sizes.front() = 1;
  sizes.back() = 1;
  std::vector<std::vector<RoabpEdge>> edges(n);
  for (uint32_t b = 0; b < B; ++b) {
    for (uint32_t l = 0; l < n; ++l) {
      uint32_t from = l == 0 ? 0 : b;
      uint32_t to = l + 1 == n ? 0 : b;
      edges[l].push_back({from, to, label_for(branches[b], l)});
    }
  }

  RoabpBuild out{Roabp(n, fld, std::move(order), std::move(sizes), std::move(edges)),
                 f.gates().size(), k_meas, s_meas,
                 sat_mul(f.gates().size(), sat_pow(s_meas, k_meas))};
  return out;
}

}  // namespace mlhs
