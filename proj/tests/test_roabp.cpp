#include <variant>

#include "doctest.h"
#include "mlhs/roabp.hpp"

using namespace mlhs;

namespace {

const Field& F() {
  static Field f;
  return f;
}

Depth4Formula d4(const char* text) {
  return std::get<Depth4Formula>(parse_formula(std::string("# class=d4\n") + text, F()));
}

}  // namespace

TEST_CASE("hand-built single edge") {
  // one variable, one edge labeled by the identity polynomial x
  Roabp r(1, F(), {0}, {1, 1}, {{{0, 0, {0, 1}}}});
  CHECK(r.width() == 1);
  CHECK(r.eval({3}) == 3);
  CHECK(r.eval({0}) == 0);
  CHECK_THROWS_AS(r.eval({1, 2}), dimension_error);
}

TEST_CASE("layer validation") {
  CHECK_THROWS_AS(Roabp(2, F(), {0}, {1, 1, 1}, {{}, {}}), param_error);       // short order
  CHECK_THROWS_AS(Roabp(2, F(), {0, 0}, {1, 1, 1}, {{}, {}}), param_error);    // not a perm
  CHECK_THROWS_AS(Roabp(2, F(), {0, 1}, {1, 1}, {{}, {}}), param_error);       // layer count
  CHECK_THROWS_AS(Roabp(2, F(), {0, 1}, {2, 1, 1}, {{}, {}}), param_error);    // two sources
  CHECK_THROWS_AS(Roabp(2, F(), {0, 1}, {1, 1, 1}, {{{0, 1, {1}}}, {}}), param_error);
}

TEST_CASE("product of two variables") {
  RoabpBuild b = from_sparse_products(d4("(x1*x2)"), {});
  CHECK(b.M == 1);
  CHECK(b.k == 1);
  CHECK(b.s == 1);
  CHECK(b.bound == 1);
  CHECK(b.roabp.width() == 1);
  CHECK(b.roabp.eval({2, 3}) == 6);
  CHECK(b.roabp.eval({2, 0}) == 0);
}

TEST_CASE("branch width matches the M*s^k bound") {
  RoabpBuild b = from_sparse_products(d4("(x1 + x2)*(x3 + x4)"), {});
  CHECK(b.M == 1);
  CHECK(b.k == 2);
  CHECK(b.s == 2);
  CHECK(b.bound == 4);
  CHECK(b.roabp.width() == 4);  // one branch per expanded monomial
  CHECK(b.roabp.eval({1, 1, 1, 1}) == 4);

  RoabpBuild u = from_sparse_products(d4("(5*x1 + 2)"), {});
  CHECK(u.k == 0);
  CHECK(u.bound == 1);  // univariate factors ride along width-1
  CHECK(u.roabp.eval({7}) == 37);
}

TEST_CASE("agrees with expansion on a grid, any order") {
  Depth4Formula f = d4("(x1 + x2)*(x3) + (x4)");
  SparseMultilinearPoly p = f.expand();
  for (std::vector<uint32_t> order : {std::vector<uint32_t>{}, {3, 2, 1, 0}, {2, 0, 3, 1}}) {
    RoabpBuild b = from_sparse_products(f, order);
    CHECK(b.roabp.width() <= b.bound);
    Point pt(4);
    for (pt[0] = 0; pt[0] < 3; ++pt[0])
      for (pt[1] = 0; pt[1] < 3; ++pt[1])
        for (pt[2] = 0; pt[2] < 3; ++pt[2])
          for (pt[3] = 0; pt[3] < 3; ++pt[3]) REQUIRE(b.roabp.eval(pt) == p.eval(pt));
  }
}

TEST_CASE("caps and degenerate inputs") {
  CHECK_THROWS_AS(from_sparse_products(d4("(x1*x2)"), {}, 0, {}), param_error);
  CHECK_THROWS_AS(from_sparse_products(d4("(x1 + x2)*(x3)"), {}, {}, 1), param_error);
  CHECK_THROWS_AS(from_sparse_products(Depth4Formula(0, F(), {}), {}), param_error);
  CHECK_THROWS_AS(from_sparse_products(d4("(x1*x2)"), {1, 1}), param_error);

  // empty formula computes 0; zero factor kills its gate
  CHECK(from_sparse_products(Depth4Formula(2, F(), {}), {}).roabp.eval({5, 5}) == 0);
  CHECK(from_sparse_products(d4("(x1*x2 + x3)*(0)"), {}).roabp.eval({1, 1, 1}) == 0);
}
