#include <sstream>
#include <variant>

#include "doctest.h"
#include "mlhs/formula.hpp"
#include "mlhs/hitting.hpp"
#include "mlhs/params.hpp"

using namespace mlhs;

namespace {

const Field& F() {
  static Field f;
  return f;
}

std::vector<Point> binary_cube(uint32_t n) {
  std::vector<Point> pts;
  for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) {
    Point p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = (s >> (n - 1 - i)) & 1;
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("point sets are sorted, deduplicated, validated") {
  HittingSet h(2, F(), {{1, 0}, {0, 1}, {1, 0}}, {});
  CHECK(h.size() == 2);
  CHECK(h.points() == std::vector<Point>{{0, 1}, {1, 0}});
  CHECK(h.contains({0, 1}));
  CHECK_FALSE(h.contains({1, 1}));
  CHECK_THROWS_AS(HittingSet(2, F(), {{1}}, {}), dimension_error);
  CHECK_THROWS_AS(HittingSet(1, F(), {{F().modulus()}}, {}), dimension_error);
}

TEST_CASE("file round trip") {
  HittingSet h(3, F(), {{0, 1, 2}, {2, 0, 0}},
               {{"construction", "grid"}, {"note", "abc"}});
  std::ostringstream out;
  h.write(out);
  CHECK(out.str().rfind("n=3 p=2305843009213693951 construction=grid\n", 0) == 0);

  std::istringstream in(out.str());
  HittingSet g = HittingSet::read(in);
  CHECK(g.n() == 3);
  CHECK(g.field().modulus() == F().modulus());
  CHECK(g.points() == h.points());
  CHECK(g.meta().at("construction") == "grid");
  CHECK(g.meta().at("note") == "abc");
}

TEST_CASE("file rejection") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return HittingSet::read(in);
  };
  CHECK_THROWS_AS(read(""), parse_error);                       // no header
  CHECK_THROWS_AS(read("n=2\n"), parse_error);                  // missing p=
  CHECK_THROWS_AS(read("n=2 p=5 junk\n"), parse_error);         // not key=value
  CHECK_THROWS_AS(read("n=2 p=x\n"), parse_error);              // bad number
  CHECK_THROWS_AS(read("n=2 p=5\n1\n"), parse_error);           // coordinate count
  CHECK_THROWS_AS(read("n=2 p=5\n1,zz\n"), parse_error);        // bad coordinate
  CHECK_THROWS_AS(read("n=2 p=5\n1,7\n"), dimension_error);     // not reduced mod p
}

TEST_CASE("evaluation grid") {
  RoabpGeneratorSpec spec;
  spec.n = 2;
  spec.degree = 1;
  HittingSet h = roabp_hitting_set(spec, F());
  CHECK(h.points() == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(h.meta().at("construction") == "grid");

  spec.degree = 2;
  CHECK(roabp_hitting_set(spec, F()).size() == 9);

  spec.n = 30;
  spec.degree = 1;
  CHECK_THROWS_AS(roabp_hitting_set(spec, F(), Budget{.max_points = 1000}), budget_error);
  spec.n = 0;
  CHECK_THROWS_AS(roabp_hitting_set(spec, F()), dimension_error);
  spec.n = 2;
  spec.degree = 3;
  CHECK_THROWS_AS(roabp_hitting_set(spec, Field(3)), param_error);  // needs 4 values
  spec.degree = 1;
  spec.backend = RoabpBackend::kQuasiPoly;
  CHECK_THROWS_AS(roabp_hitting_set(spec, F()), param_error);
}

TEST_CASE("per-bucket product set") {
  RoabpGeneratorSpec tmpl;  // n is overridden per bucket
  tmpl.degree = 1;

  // one bucket: the product is just that bucket's grid
  HittingSet one = build_Ih(HashFamily(2, 1, 1), {0}, tmpl, F());
  CHECK(one.points() == binary_cube(2));
  CHECK(one.meta().at("construction") == "product");
  CHECK(one.meta().at("m") == "1");

  // injective hash (q=2, poly=x): bucket per variable, product is the cube
  HittingSet inj = build_Ih(HashFamily(2, 2, 2), {0, 1}, tmpl, F());
  CHECK(inj.points() == binary_cube(2));

  // per-bucket grids fit the budget but their product does not
  CHECK_THROWS_AS(build_Ih(HashFamily(4, 2, 2), {0, 1}, tmpl, F(),
                           Budget{.max_points = 10}),
                  budget_error);
}

TEST_CASE("small-support union collapses on the grid backend") {
  double eps = eps3(0.5);
  HittingSet fast = small_support_hs(false, 4, 0.5, eps, 0.0, F());
  CHECK(fast.points() == binary_cube(4));
  CHECK(fast.meta().at("collapsed") == "1");
  CHECK(fast.meta().at("members_used") == "1");

  SmallSupportOptions walk;
  walk.force_enumeration = true;
  HittingSet slow = small_support_hs(false, 4, 0.5, eps, 0.0, F(), Budget{}, walk);
  CHECK(slow.meta().at("collapsed") == "0");
  CHECK(slow.points() == fast.points());
}

TEST_CASE("lifting a base set") {
  HittingSet base(2, F(), {{7, 9}}, {});
  HittingSet l = lift(base, VarMask{1} << 1, VarMask{1} << 2, 4);
  CHECK(l.points() == std::vector<Point>{{7, 0, 0, 9}, {7, 1, 0, 9}});
  CHECK(l.size() == 2);  // 2^|A| * |base|
  CHECK(l.meta().at("construction") == "lift");
  CHECK(l.meta().at("A") == "x2");
  CHECK(l.meta().at("B") == "x3");

  HittingSet id = lift(base, 0, 0, 2);
  CHECK(id.points() == base.points());
  CHECK(id.meta().at("A") == "-");

  CHECK_THROWS_AS(lift(base, 0b1, 0b1, 4), dimension_error);   // A, B overlap
  CHECK_THROWS_AS(lift(base, 0b1, 0, 2), dimension_error);     // arity mismatch
  CHECK_THROWS_AS(lift(base, 0b100, 0, 2), dimension_error);   // A outside x1..x2
}

TEST_CASE("top-level constructions at desk scale") {
  HittingSet d3 = depth3_hs(4, 0.5, F());
  CHECK(d3.points() == binary_cube(4));  // radius reaches n, bases are cubes
  CHECK(d3.meta().at("construction") == "depth3");
  CHECK(d3.meta().count("r") == 1);
  CHECK(d3.meta().count("lifts") == 1);

  HittingSet d4 = depth4_hs(4, 4, 64, F());
  CHECK(d4.points() == binary_cube(4));
  CHECK(d4.meta().at("construction") == "depth4");

  HittingSet reg = regular_hs(4, 1, 0.1, F());
  CHECK(reg.points() == binary_cube(4));
  CHECK(reg.meta().at("delta_clamped") == "1");  // 0.1 > 1/25
  CHECK(reg.meta().at("alpha") == "0.05");

  CHECK_THROWS_AS(depth3_hs(4, 0.0, F()), param_error);
  CHECK_THROWS_AS(depth3_hs(4, 2.0, F()), param_error);
  CHECK_THROWS_AS(depth3_hs(0, 0.5, F()), dimension_error);
  CHECK_THROWS_AS(depth4_hs(4, 0, 5, F()), param_error);
  CHECK_THROWS_AS(depth4_hs_log(4, 8.0, 10.0, F()), param_error);  // hypothesis
  CHECK_THROWS_AS(regular_hs(4, 0, 0.1, F()), param_error);
}

TEST_CASE("black-box zero test") {
  auto f = std::get<Depth3Formula>(parse_formula("(x1 + x2)*(x3) + (x4)", F()));
  auto eval = [&](const Point& p) { return f.eval(p); };
  HittingSet h(4, F(), {{1, 1, 1, 1}, {0, 1, 0, 0}, {0, 0, 0, 0}}, {});

  PitResult r = pit_blackbox(eval, h);
  CHECK_FALSE(r.is_zero);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == Point{1, 1, 1, 1});  // first point in sorted order that hits
  CHECK(r.eval_count == 3);

  auto z = std::get<Depth3Formula>(parse_formula("(x1) + (-1*x1)", F(), 4));
  PitResult rz = pit_blackbox([&](const Point& p) { return z.eval(p); }, h);
  CHECK(rz.is_zero);
  CHECK_FALSE(rz.witness.has_value());
  CHECK(rz.eval_count == h.size());
}

TEST_CASE("parallel scan matches the sequential one") {
  RoabpGeneratorSpec spec;
  spec.n = 11;
  spec.degree = 1;
  HittingSet h = roabp_hitting_set(spec, F());  // 2048 points
  SparseMultilinearPoly last =
      SparseMultilinearPoly::monomial(11, F(), full_mask(11), 1);
  auto eval = [&](const Point& p) { return last.eval(p); };
  PitResult seq = pit_blackbox(eval, h, 1);
  PitResult par = pit_blackbox(eval, h, 4);
  CHECK_FALSE(par.is_zero);
  CHECK(*par.witness == *seq.witness);
  CHECK(par.eval_count == seq.eval_count);
  CHECK(par.eval_count == h.size());  // only the all-ones point is nonzero
}
