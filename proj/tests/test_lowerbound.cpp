#include "doctest.h"
#include "mlhs/lowerbound.hpp"
#include "mlhs/oracle.hpp"

using namespace mlhs;

namespace {

const Field& F() {
  static Field f;
  return f;
}

}  // namespace

TEST_CASE("smallest cases") {
  // H = {0}: x1 vanishes and is the first dependent column
  HittingSet h1(1, F(), {{0}}, {});
  SparseMultilinearPoly f1 = vanishing_multilinear(h1, 1);
  CHECK(f1 == SparseMultilinearPoly::monomial(1, F(), 0b1, 1));
  CHECK(verify_certificate(f1, h1));

  // H = {(0,0),(1,1)}: x2 - x1
  HittingSet h2(2, F(), {{0, 0}, {1, 1}}, {});
  SparseMultilinearPoly f2 = vanishing_multilinear(h2, 2);
  CHECK(f2.sparsity() == 2);
  CHECK(f2.coeff(0b10) == 1);
  CHECK(f2.coeff(0b01) == F().neg(1));
  CHECK(verify_certificate(f2, h2));

  // empty H: the constant 1 vanishes vacuously
  HittingSet h0(1, F(), {}, {});
  SparseMultilinearPoly f0 = vanishing_multilinear(h0, 1);
  CHECK(f0 == SparseMultilinearPoly::constant(1, F(), 1));
  CHECK(verify_certificate(f0, h0));
}

TEST_CASE("preconditions") {
  HittingSet full(1, F(), {{0}, {1}}, {});
  CHECK_THROWS_AS(vanishing_multilinear(full, 1), param_error);  // |H| = 2^n
  HittingSet h(2, F(), {{0, 0}}, {});
  CHECK_THROWS_AS(vanishing_multilinear(h, 3), dimension_error);  // n mismatch
  CHECK_THROWS_AS(vanishing_multilinear(h, 2, 2), budget_error);  // 4 columns > 2
}

TEST_CASE("verification is strict") {
  HittingSet h(2, F(), {{0, 0}, {1, 1}}, {});
  CHECK_FALSE(verify_certificate(SparseMultilinearPoly::zero(2, F()), h));
  CHECK_FALSE(verify_certificate(SparseMultilinearPoly::constant(2, F(), 1), h));
  CHECK_FALSE(verify_certificate(SparseMultilinearPoly::constant(3, F(), 1), h));
}

TEST_CASE("random point sets get genuine certificates") {
  Rng rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(4));
    uint64_t want = 1 + rng.below((uint64_t{1} << n) - 1);
    std::vector<Point> pts;
    for (uint64_t i = 0; i < want; ++i) {
      Point p(n);
      for (uint32_t j = 0; j < n; ++j) p[j] = rng.below(3);
      pts.push_back(std::move(p));
    }
    HittingSet h(n, F(), std::move(pts), {});
    SparseMultilinearPoly f = vanishing_multilinear(h, n);
    CHECK(verify_certificate(f, h));
    CHECK_FALSE(f.is_zero());
    CHECK(f.sparsity() <= h.size() + 1);  // supported on the scanned prefix

    // deterministic: the same input yields the same polynomial
    CHECK(f == vanishing_multilinear(h, n));
  }
}
