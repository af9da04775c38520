#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mlhs/formula.hpp"

namespace mlhs {

// Edge between consecutive layers, labeled by a univariate polynomial in the
// layer's variable (coeffs[i] multiplies x^i; degree <= 1 throughout here).
struct RoabpEdge {
  uint32_t from;
  uint32_t to;
  std::vector<uint64_t> coeffs;
};

/// Layered read-once oblivious ABP: layer l's edges read variable order[l-1];
/// layer 0 is the single source, layer n the single sink. Evaluation is the
/// layered matrix product.
class Roabp {
 public:
  Roabp(uint32_t n, const Field& f, std::vector<uint32_t> order,
        std::vector<uint32_t> layer_sizes, std::vector<std::vector<RoabpEdge>> layer_edges);

  uint32_t n() const { return n_; }
  const Field& field() const { return field_; }
  const std::vector<uint32_t>& order() const { return order_; }
  const std::vector<uint32_t>& layer_sizes() const { return layer_sizes_; }
  const std::vector<std::vector<RoabpEdge>>& layer_edges() const { return layer_edges_; }

  uint32_t width() const;

  uint64_t eval(const Point& pt) const;

 private:
  uint32_t n_;
  Field field_;
  std::vector<uint32_t> order_;
  std::vector<uint32_t> layer_sizes_;
  std::vector<std::vector<RoabpEdge>> layer_edges_;
};

struct RoabpBuild {
  Roabp roabp;
  uint64_t M;      // gate count
  uint64_t k;      // max multi-variable factors per gate
  uint64_t s;      // max factor sparsity
  uint64_t bound;  // M * s^k, saturating
};

// Builds the parallel-branch ROABP for a sum of products of sparse
// polynomials: each gate's multi-variable factors are expanded into at most
// s^k monomials, every monomial becomes one width-1 branch along `order`,
// variables absent from a branch get constant-1 edges. Resulting width is at
// most M * s^k. Optional caps validate measured k and s (errors name the
// offending gate).
RoabpBuild from_sparse_products(const Depth4Formula& f, std::vector<uint32_t> order,
                                std::optional<uint64_t> k_cap = std::nullopt,
                                std::optional<uint64_t> s_cap = std::nullopt,
                                uint64_t term_cap = kDefaultTermCap);

}  // namespace mlhs
