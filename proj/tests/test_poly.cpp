#include <vector>

#include "doctest.h"
#include "mlhs/poly.hpp"

using namespace mlhs;

namespace {

const Field& F() {
  static Field f;
  return f;
}

// c * x_{i1} * x_{i2} * ...  (1-based indices for readability)
SparseMultilinearPoly mono(uint32_t n, long long c, std::vector<uint32_t> vars) {
  VarMask m = 0;
  for (uint32_t v : vars) m |= VarMask{1} << (v - 1);
  return SparseMultilinearPoly::monomial(n, F(), m, F().from_int(c));
}

}  // namespace

TEST_CASE("construction and canonical form") {
  SparseMultilinearPoly z = SparseMultilinearPoly::zero(3, F());
  CHECK(z.is_zero());
  CHECK(z.sparsity() == 0);
  CHECK(z.leaves() == 0);

  SparseMultilinearPoly f = mono(3, 2, {1, 2}) + mono(3, -2, {1, 2});
  CHECK(f.is_zero());  // cancellation removes the term

  SparseMultilinearPoly c = SparseMultilinearPoly::constant(3, F(), 5);
  CHECK(c.is_constant());
  CHECK(c.leaves() == 1);
  CHECK(mono(3, 1, {1, 2}).leaves() == 2);
}

TEST_CASE("evaluation") {
  // x1*x2 + x3 at (1,1,0) -> 1
  SparseMultilinearPoly f = mono(3, 1, {1, 2}) + mono(3, 1, {3});
  CHECK(f.eval({1, 1, 0}) == 1);
  CHECK(SparseMultilinearPoly::zero(3, F()).eval({7, 8, 9}) == 0);
  // (x1+x2)(x3+x4) expanded, at (1,1,1,1) -> 4
  SparseMultilinearPoly g = (mono(4, 1, {1}) + mono(4, 1, {2})) *
                            (mono(4, 1, {3}) + mono(4, 1, {4}));
  CHECK(g.eval({1, 1, 1, 1}) == 4);
  CHECK_THROWS_AS(f.eval({1, 1}), dimension_error);
}

TEST_CASE("derivative and restriction") {
  // d_x1 (x1*x2 + x2) = x2
  SparseMultilinearPoly f = mono(2, 1, {1, 2}) + mono(2, 1, {2});
  CHECK(f.derivative(0) == mono(2, 1, {2}));
  // d_x1 ((x1+x2)*x3 + x4) = x3
  SparseMultilinearPoly g = (mono(4, 1, {1}) + mono(4, 1, {2})) * mono(4, 1, {3}) +
                            mono(4, 1, {4});
  CHECK(g.derivative(0) == mono(4, 1, {3}));
  // (x1*x2 + x3)|_{x3=0} = x1*x2
  SparseMultilinearPoly h = mono(3, 1, {1, 2}) + mono(3, 1, {3});
  CHECK(h.restricted(2, 0) == mono(3, 1, {1, 2}));
  // ((x1+x2)*x3)|_{x1=1,x2=1} = 2*x3
  SparseMultilinearPoly k = (mono(3, 1, {1}) + mono(3, 1, {2})) * mono(3, 1, {3});
  CHECK(k.restricted(0, 1).restricted(1, 1) == mono(3, 2, {3}));
}

TEST_CASE("derivative-restriction identities") {
  // f = x1*x2 + 3*x2*x3 + x1 + 7
  SparseMultilinearPoly f =
      mono(3, 1, {1, 2}) + mono(3, 3, {2, 3}) + mono(3, 1, {1}) +
      SparseMultilinearPoly::constant(3, F(), 7);
  for (uint32_t x = 0; x < 3; ++x) {
    // d_x f = f|_{x=1} - f|_{x=0}
    CHECK(f.derivative(x) == f.restricted(x, 1) - f.restricted(x, 0));
    // ||f|| = ||f|_{x=0}|| + ||d_x f||
    CHECK(f.sparsity() == f.restricted(x, 0).sparsity() + f.derivative(x).sparsity());
  }
  // derive and restrict commute on disjoint variables
  CHECK(f.derivative(0).restricted(2, 0) == f.restricted(2, 0).derivative(0));
  CHECK(f.derive_restrict(VarMask{1} << 0, VarMask{1} << 2) ==
        f.derivative(0).restricted(2, 0));
  CHECK(f.derive_restrict(0, 0) == f);
}

TEST_CASE("variable sets") {
  SparseMultilinearPoly f = mono(2, 1, {1, 2});
  CHECK(f.var_mask() == 0b11);
  CHECK(f.var_star_mask() == 0);  // both variables divide
  SparseMultilinearPoly g = mono(2, 1, {1}) + mono(2, 1, {2});
  CHECK(g.var_star_mask() == 0b11);
  SparseMultilinearPoly h = mono(2, 1, {1, 2}) + mono(2, 1, {1});
  CHECK(h.var_star_mask() == 0b10);  // x1 divides h
  // no monomial-common variable => var* = var
  SparseMultilinearPoly k = mono(3, 1, {1, 2}) + mono(3, 1, {3});
  CHECK(k.var_star_mask() == k.var_mask());
}

TEST_CASE("multiplication guards multilinearity") {
  SparseMultilinearPoly a = mono(2, 1, {1}) + SparseMultilinearPoly::constant(2, F(), 1);
  CHECK_THROWS_AS(a * a, dimension_error);
  Field other(101);
  SparseMultilinearPoly b(2, other);
  CHECK_THROWS_AS(a + b, dimension_error);
}
