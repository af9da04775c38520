#include <cmath>

#include "doctest.h"
#include "mlhs/errors.hpp"
#include "mlhs/params.hpp"

using namespace mlhs;
using doctest::Approx;

TEST_CASE("powers and tolerant ceiling") {
  CHECK(npow(16, 0.5) == Approx(4.0));
  CHECK(npow(1024, 0.2) == Approx(4.0));
  CHECK_THROWS_AS(npow(0, 0.5), param_error);

  CHECK(ceil_tol(2.0) == 2);
  CHECK(ceil_tol(2.1) == 3);
  CHECK(ceil_tol(2.0000000005) == 2);  // within the 1e-9 slack
  CHECK(ceil_tol(2.000000002) == 3);   // outside it
  CHECK(ceil_tol(0.0) == 0);
  CHECK(ceil_tol(-3.5) == 0);
}

TEST_CASE("depth-3 parameter chain") {
  CHECK(eps3(0.25) == Approx(7.0 / 12.0));
  CHECK(eps3(1.0) == Approx(1.0 / 3.0));

  CHECK(k_raw(16, 0.25) == Approx(10.0));  // 16^(1/4) + 2*4
  CHECK(k_param(16, 0.25) == 10);
  CHECK(k_param(4, 1.0) == 4);   // 4 + 4 clamps to n
  CHECK(k_param(2, 0.0) == 2);   // 1 + 2 clamps to n

  double eps = eps3(0.25);
  CHECK(m_raw(16, 0.25, eps) == Approx(10.0 * std::exp2(7.0 / 3.0)));
  CHECK(m_param(16, 0.25, eps) == 16);    // 50.4 clamps to n
  CHECK(m_param(256, 0.25, eps) == 254);  // ceil(10 * 256^(7/12))

  CHECK(t_exponent(16, 10) == Approx(40.0));
  CHECK(s_depth3(4) == 5);

  CHECK(r3_raw(16, 0.25) == Approx(std::exp2(10.0 / 3.0) * 4.0));
  CHECK(r3_param(16, 0.25) == 16);  // 40.3 clamps to n
  CHECK(r3_param(2, 0.0) == 2);
}

TEST_CASE("depth-4 parameter chain") {
  CHECK(log2_s_depth4(7) == Approx(7.0));

  // eps solves n^eps = n^(2/3) * log2M / (log2S)^(2/3)
  double eps = eps4_raw(16, 2.0, 6.0);
  CHECK(npow(16, eps) == Approx(npow(16, 2.0 / 3.0) * 2.0 / std::pow(6.0, 2.0 / 3.0)));
  CHECK_THROWS_AS(eps4_raw(16, 0.0, 6.0), param_error);
  CHECK(eps4_param(4, 100.0, 2.0) == Approx(1.0));      // clamped from above
  CHECK(eps4_param(1024, 1.0, 1024.0) == Approx(1e-6));  // clamped from below

  CHECK(r4_param(1024, 0.2, 2.0) == 16);  // 2 * 4 * 2
  CHECK(r4_param(4, 1.0, 10.0) == 4);     // 80 clamps to n

  CHECK(delta_from_log2M(16, 4.0) == Approx(0.5));
  CHECK(delta_from_log2M(16, 1.0) == 0.0);
  CHECK(delta_from_log2M(1, 8.0) == 0.0);
}

TEST_CASE("size hypothesis gate") {
  HypothesisCheck bad = depth4_hypothesis(4, 8.0, 10.0);
  CHECK(bad.lhs == Approx(5120.0));
  CHECK(bad.rhs == Approx(64.0));
  CHECK_FALSE(bad.ok);

  HypothesisCheck good = depth4_hypothesis(64, 2.0, 3.0);
  CHECK(good.lhs == Approx(24.0));
  CHECK(good.rhs == Approx(82944.0));
  CHECK(good.ok);
}

TEST_CASE("regular formula parameters") {
  CHECK(regular_delta_max(1) == Approx(1.0 / 25.0));
  CHECK(regular_delta_max(2) == Approx(1.0 / 125.0));

  double delta = regular_delta_max(2);
  RegularCaseParams p = regular_case_params(8, 2, delta);
  CHECK(p.alpha == Approx(0.05));  // (1/5)^1 / 4
  CHECK(p.log2M_case12 == Approx(npow(8, delta)));
  // split case: log2 M = n^alpha * log2 S, i.e. M = S^(n^alpha)
  CHECK(p.log2M_case3 == Approx(npow(8, p.alpha) * npow(8, delta)));
  CHECK(p.log2S_case3 > p.log2M_case3);

  CHECK_THROWS_AS(regular_case_params(8, 0, delta), param_error);
  CHECK_THROWS_AS(regular_case_params(8, 2, delta, 2), param_error);
}
