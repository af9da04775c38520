#include "mlhs/lowerbound.hpp"

#include <algorithm>
#include <vector>

#include "mlhs/bits.hpp"
#include "mlhs/errors.hpp"

namespace mlhs {

SparseMultilinearPoly vanishing_multilinear(const HittingSet& H, uint32_t n,
                                            uint64_t column_budget) {
  if (n == 0 || n > kMaxVars)
    throw dimension_error("certificate extraction needs 1.." +
                          std::to_string(kMaxVars) + " variables, got " +
                          std::to_string(n));
  if (H.n() != n)
    throw dimension_error("hitting set is over " + std::to_string(H.n()) +
                          " variables, certificate requested over " +
                          std::to_string(n));
  if (n >= 64 || (uint64_t{1} << n) > column_budget)
    throw budget_error("2^n = " + std::to_string(n >= 64 ? 0 : (uint64_t{1} << n)) +
                       " monomial columns exceed the budget of " +
                       std::to_string(column_budget));
  const uint64_t ncols = uint64_t{1} << n;
  const uint64_t rows = H.size();
  if (rows >= ncols)
    throw param_error("|H| = " + std::to_string(rows) +
                      " is not smaller than 2^n = " + std::to_string(ncols) +
                      "; no nonzero multilinear certificate is guaranteed");
  const Field& fld = H.field();
  const std::vector<Point>& pts = H.points();

  // Accepted independent columns: reduced vector, its pivot row, and its
  // combination over the original monomials.
  struct Accepted {
    std::vector<uint64_t> vec;
    uint64_t pivot;
    std::vector<std::pair<VarMask, uint64_t>> comb;
  };
  std::vector<Accepted> accepted;

  auto column_of = [&](VarMask mono) {
    std::vector<uint64_t> col(rows);
    for (uint64_t i = 0; i < rows; ++i) {
      uint64_t v = 1;
      for (uint32_t x : mask_to_indices(mono)) v = fld.mul(v, pts[i][x]);
      col[i] = v;
    }
    return col;
  };

  // Degree-ascending, then variable-lexicographic scan of the monomials.
  for (uint32_t deg = 0; deg <= n; ++deg) {
    std::vector<VarMask> level;
    SubsetRange(full_mask(n), deg).for_each([&](VarMask m) {
      level.push_back(m);
    });
    std::sort(level.begin(), level.end(), deglex_less);
    for (VarMask mono : level) {
      std::vector<uint64_t> w = column_of(mono);
      std::vector<std::pair<VarMask, uint64_t>> comb{{mono, 1}};
      for (const Accepted& acc : accepted) {
        uint64_t lambda = w[acc.pivot];
        if (lambda == 0) continue;
        for (uint64_t i = 0; i < rows; ++i)
          w[i] = fld.sub(w[i], fld.mul(lambda, acc.vec[i]));
        for (const auto& [cm, cc] : acc.comb) {
          bool found = false;
          for (auto& [m2, c2] : comb)
            if (m2 == cm) {
              c2 = fld.sub(c2, fld.mul(lambda, cc));
              found = true;
              break;
            }
          if (!found) comb.emplace_back(cm, fld.sub(0, fld.mul(lambda, cc)));
        }
      }
      uint64_t pivot = rows;
      for (uint64_t i = 0; i < rows; ++i)
        if (w[i] != 0) {
          pivot = i;
          break;
        }
      if (pivot == rows) {
        // Dependent column: comb is a kernel vector with coefficient 1 on
        // `mono`, i.e. a certificate.
        SparseMultilinearPoly f = SparseMultilinearPoly::zero(n, fld);
        for (const auto& [m2, c2] : comb) f.add_term(m2, c2);
        return f;
      }
      uint64_t inv = fld.inv(w[pivot]);
      for (uint64_t& v : w) v = fld.mul(v, inv);
      for (auto& [m2, c2] : comb) c2 = fld.mul(c2, inv);
      accepted.push_back({std::move(w), pivot, std::move(comb)});
    }
  }
  throw error("internal: no dependent monomial column found although |H| < 2^n");
}

bool verify_certificate(const SparseMultilinearPoly& f, const HittingSet& H) {
  if (f.is_zero()) return false;
  if (f.n() != H.n()) return false;
  for (const Point& p : H.points())
    if (f.eval(p) != 0) return false;
  return true;
}

}  // namespace mlhs
