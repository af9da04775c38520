#include <fstream>
#include <sstream>
#include <variant>

#include "doctest.h"
#include "mlhs/oracle.hpp"

using namespace mlhs;

namespace {

const Field& F() {
  static Field f;
  return f;
}

#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "tests/data"
#endif

}  // namespace

TEST_CASE("grid scan") {
  SparseMultilinearPoly p = SparseMultilinearPoly::monomial(2, F(), 0b11, 1);
  auto eval = [&](const Point& pt) { return p.eval(pt); };
  GridVerdict v = grid_pit(eval, 2, 1, F());
  CHECK_FALSE(v.is_zero);
  CHECK(*v.witness == Point{1, 1});  // odometer order, last variable fastest
  CHECK(v.eval_count == 4);

  GridVerdict z = grid_pit([](const Point&) { return uint64_t{0}; }, 2, 1, F());
  CHECK(z.is_zero);
  CHECK(z.eval_count == 4);
  CHECK_FALSE(z.witness.has_value());

  CHECK_THROWS_AS(grid_pit(eval, 0, 1, F()), dimension_error);
  CHECK_THROWS_AS(grid_pit(eval, 2, 3, Field(3)), param_error);
  CHECK_THROWS_AS(grid_pit(eval, 30, 1, F(), 100), budget_error);
}

TEST_CASE("deterministic rng and generators") {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  Rng c(6);
  CHECK(c.below(0) == 0);
  CHECK(Rng(7).field_nonzero(F()) != 0);

  GenParams gp;
  gp.n = 4;
  gp.gates = 2;
  auto f1 = gen_formula("d3", gp, 99, F());
  auto f2 = gen_formula("d3", gp, 99, F());
  CHECK(print_formula(f1) == print_formula(f2));
  CHECK(std::get<Depth3Formula>(f1).fanin() == 2);

  gp.max_sparsity = 4;
  auto g1 = gen_formula("d4", gp, 99, F());
  CHECK(print_formula(g1) == print_formula(gen_formula("d4", gp, 99, F())));
  CHECK(std::holds_alternative<Depth4Formula>(g1));

  gp.profile = {2, 2, 2};
  auto r1 = gen_formula("regular", gp, 99, F());
  CHECK(print_formula(r1) == print_formula(gen_formula("regular", gp, 99, F())));

  CHECK_THROWS_AS(gen_formula("bogus", gp, 1, F()), param_error);
  Rng bad(1);
  CHECK_THROWS_AS(gen_depth3(bad, 0, 1, F()), param_error);
  CHECK_THROWS_AS(gen_depth3(bad, 4, 0, F()), param_error);
  CHECK_THROWS_AS(gen_depth4(bad, 4, 1, 0, F()), param_error);
}

TEST_CASE("single-leaf profile") {
  Rng rng(11);
  RegularFormula r = gen_regular(rng, 2, {1, 1, 1}, F());
  CHECK(r.size() == 1);
  CHECK(r.formal_degree() == 1);
  CHECK(r.expand().sparsity() == 1);  // one leaf with a nonzero coefficient
}

TEST_CASE("corpus layout") {
  GenParams gp;
  gp.n = 4;
  gp.gates = 2;
  Corpus c = make_corpus("d3", gp, 7, 5, F());
  CHECK(c.cls == "d3");
  CHECK(c.n == 4);
  CHECK(c.seed == 7);

  uint32_t randoms = 0, planted = 0, adversarial = 0;
  for (const CorpusItem& item : c.items) {
    CHECK(item.nonzero == !item.expansion.is_zero());
    CHECK(formula_expand(item.formula) == item.expansion);
    if (item.label.rfind("random-", 0) == 0) {
      ++randoms;
      CHECK(item.nonzero);
    } else if (item.label.rfind("planted-zero-", 0) == 0) {
      ++planted;
      CHECK_FALSE(item.nonzero);
    } else {
      ++adversarial;
    }
  }
  CHECK(randoms == 5);
  CHECK(planted == 2);
  CHECK(adversarial == 4);  // cancel-zero, cancel-var, wide-form, wide-times-leaf

  Corpus again = make_corpus("d3", gp, 7, 5, F());
  REQUIRE(again.items.size() == c.items.size());
  for (size_t i = 0; i < c.items.size(); ++i) {
    CHECK(again.items[i].label == c.items[i].label);
    CHECK(print_formula(again.items[i].formula) == print_formula(c.items[i].formula));
  }

  gp.max_sparsity = 4;
  Corpus d4c = make_corpus("d4", gp, 9, 5, F());
  bool divisor_item = false, wide_item = false;
  for (const CorpusItem& item : d4c.items) {
    CHECK(item.nonzero == !item.expansion.is_zero());
    divisor_item = divisor_item || item.label == "adv-divisor-in-factor";
    wide_item = wide_item || item.label == "adv-wide-factor";
  }
  CHECK(divisor_item);
  CHECK(wide_item);
}

TEST_CASE("generator output is frozen") {
  GenParams gp;
  gp.n = 4;
  gp.gates = 2;
  std::string produced = print_formula(gen_formula("d3", gp, 1, F()));

  std::ifstream in(std::string(TEST_DATA_DIR) + "/gen_d3_n4_g2_seed1.txt");
  REQUIRE_MESSAGE(in.good(), "golden file missing");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(produced == buf.str());
}
