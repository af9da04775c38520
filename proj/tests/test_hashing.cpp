#include "doctest.h"
#include "mlhs/hashing.hpp"

using namespace mlhs;

TEST_CASE("family parameters and member enumeration") {
  HashFamily f(3, 2, 2);
  CHECK(f.q() == 3);  // smallest prime >= max(n, m)
  CHECK(f.size() == 9);
  CHECK(f.member(0) == std::vector<uint64_t>{0, 0});
  CHECK(f.member(5) == std::vector<uint64_t>{2, 1});  // c0 is the least significant digit
  CHECK(HashFamily(4, 3, 2).q() == 5);
  CHECK(HashFamily(2, 2, 1).q() == 2);

  CHECK_THROWS_AS(HashFamily(0, 1, 1), param_error);
  CHECK_THROWS_AS(HashFamily(4, 3, 2, 4), param_error);  // override not prime
  CHECK_THROWS_AS(HashFamily(4, 3, 2, 3), param_error);  // override below max(n, m)
}

TEST_CASE("evaluation and buckets") {
  HashFamily f(4, 3, 2, 5);
  CHECK(f.poly_eval({0, 1}, 4) == 4);
  CHECK(f.poly_eval({0, 1}, 7) == 2);  // argument reduced mod q
  CHECK(HashFamily(4, 3, 3, 5).poly_eval({1, 2, 3}, 2) == 2);  // 1 + 2*2 + 3*4 = 17

  CHECK(f.bucket({0, 1}, 4) == 2);  // (4 mod 5 mod 3) + 1
  CHECK(f.bucket({0, 1}, 3) == 1);
  CHECK(f.preimage({0, 1}, 2) == 0b1001);  // elements 1 and 4
  VarMask all = 0;
  for (uint32_t j = 1; j <= 3; ++j) all |= f.preimage({0, 1}, j);
  CHECK(all == full_mask(4));  // buckets partition [n]

  CHECK_THROWS_AS(f.bucket({0, 1}, 0), param_error);
  CHECK_THROWS_AS(f.bucket({0, 1}, 5), param_error);

  // k=1 members are constant: one bucket swallows everything
  HashFamily c(4, 4, 1);
  for (uint32_t x = 2; x <= 4; ++x) CHECK(c.bucket({3}, x) == c.bucket({3}, 1));
}

TEST_CASE("partition validation") {
  CHECK_NOTHROW(validate_partitions({{0b011, 0b100}, {0b110}}, 3));
  CHECK_THROWS_AS(validate_partitions({{0b011, 0b110}}, 3), param_error);  // overlap
  CHECK_THROWS_AS(validate_partitions({{0b1000}}, 3), param_error);        // element > n
  CHECK_THROWS_AS(validate_partitions({{0}}, 3), param_error);             // empty set
}

TEST_CASE("hash conditions") {
  // injective member: every intersection is a singleton
  HashFamily f(4, 4, 2, 5);
  PartitionFamily parts = {{0b0001, 0b0010, 0b0100, 0b1000}, {0b1111}};
  HashCheckResult ok = check_hash_conditions(f, {0, 1}, parts);
  CHECK(ok.ok);

  // m=1 sends a (k+1)-set into one bucket: condition 1
  HashFamily g(4, 1, 1);
  HashCheckResult c1 = check_hash_conditions(g, {0}, {{0b0011}});
  CHECK_FALSE(c1.ok);
  CHECK(c1.condition == 1);
  CHECK(c1.set == 0b0011);
  CHECK(c1.count == 2);

  // 32 disjoint pairs all collide: passes condition 1 at k=2, fails condition 2
  HashFamily h(64, 1, 2);
  PartitionFamily pairs(1);
  for (uint32_t i = 0; i < 64; i += 2) pairs[0].push_back(VarMask{0b11} << i);
  HashCheckResult c2 = check_hash_conditions(h, {0, 0}, pairs);
  CHECK_FALSE(c2.ok);
  CHECK(c2.condition == 2);
  CHECK(c2.bucket == 1);
  CHECK(c2.count == 32);  // > k*log2(n) = 12
}

TEST_CASE("searching the family") {
  // singleton sets pass under any member, so the first one wins
  HashFamily f(4, 2, 1);
  GoodHash gh = find_good_hash(f, {{0b0001, 0b0010}});
  CHECK(gh.index == 0);
  CHECK(gh.coeffs == std::vector<uint64_t>{0});

  // impossible demand: exhausts the whole family
  HashFamily g(4, 1, 1);
  CHECK_THROWS_AS(find_good_hash(g, {{0b0011}}), error);

  // enumeration cap cuts the search short
  HashFamily h(64, 1, 2);
  PartitionFamily pairs(1);
  for (uint32_t i = 0; i < 64; i += 2) pairs[0].push_back(VarMask{0b11} << i);
  CHECK_THROWS_AS(find_good_hash(h, pairs, 3), budget_error);
}
