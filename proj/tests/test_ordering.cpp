#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <scatterlab/ordering.hpp>

using namespace scatterlab;

namespace {

Product2 prod(std::initializer_list<std::pair<std::array<Int, 2>, Rat>> fs) {
  Product2 p;
  for (auto& [n, c] : fs) p.push_back({n, c});
  return p;
}

void check_equal(const Product2& got, const Product2& want) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i].n == want[i].n);
    CHECK(got[i].c == want[i].c);
  }
}

}  // namespace

/* The two full reference runs, frozen list-for-list. These pin every scan,
   swap and pentagon decision of the rewrite, so any behavioural drift in the
   engine shows up here first. */

TEST_CASE("reference run: degree 5, [0,1]^5 [1,0]^3") {
  Product2 in = prod({{{0, 1}, 5}, {{1, 0}, 3}});
  Product2 want = prod({{{1, 0}, 3},
                        {{3, 1}, 5},
                        {{2, 1}, 15},
                        {{3, 2}, 125},
                        {{1, 1}, 15},
                        {{2, 2}, 60},
                        {{2, 3}, 270},
                        {{1, 2}, 30},
                        {{1, 3}, 30},
                        {{1, 4}, 15},
                        {{0, 1}, 5}});
  check_equal(order(5, in), want);
}

TEST_CASE("reference run: degree 6, mixed fractional input") {
  Product2 in = prod({{{0, 1}, 1}, {{1, 2}, 1}, {{2, 1}, 1}, {{2, 2}, Rat(1, 2)}, {{1, 0}, 2}});
  Product2 want = prod({{{1, 0}, 2},
                        {{4, 1}, 1},
                        {{3, 1}, 2},
                        {{2, 1}, 2},
                        {{4, 2}, 19},
                        {{3, 2}, 16},
                        {{1, 1}, 2},
                        {{2, 2}, Rat(13, 2)},
                        {{3, 3}, 33},
                        {{2, 3}, 10},
                        {{1, 2}, 1},
                        {{2, 4}, Rat(9, 2)},
                        {{1, 3}, 1},
                        {{0, 1}, 1}});
  check_equal(order(6, in), want);
}

/* Finite-type products terminate exactly: raising the cutoff beyond the
   longest factor degree changes nothing. */

TEST_CASE("pentagon product") {
  Product2 in = prod({{{0, 1}, 1}, {{1, 0}, 1}});
  Product2 want = prod({{{1, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 1}});
  for (Int L : {2, 3, 10}) check_equal(order(L, in), want);
}

TEST_CASE("rank-2 product with a doubled factor") {
  Product2 in = prod({{{0, 1}, 2}, {{1, 0}, 1}});
  Product2 want = prod({{{1, 0}, 1}, {{1, 1}, 2}, {{1, 2}, 1}, {{0, 1}, 2}});
  for (Int L : {3, 4, 12}) check_equal(order(L, in), want);
}

TEST_CASE("rank-2 product with a tripled factor") {
  Product2 in = prod({{{0, 1}, 3}, {{1, 0}, 1}});
  Product2 want = prod({{{1, 0}, 1},
                        {{1, 1}, 3},
                        {{2, 3}, 1},
                        {{1, 2}, 3},
                        {{1, 3}, 1},
                        {{0, 1}, 3}});
  for (Int L : {5, 6, 13}) check_equal(order(L, in), want);
}

TEST_CASE("affine-type product stabilizes by degree") {
  // [0,1]^2 [1,0]^2 at cutoff 7
  Product2 in = prod({{{0, 1}, 2}, {{1, 0}, 2}});
  Product2 want = prod({{{1, 0}, 2},
                        {{2, 1}, 2},
                        {{3, 2}, 2},
                        {{4, 3}, 2},
                        {{1, 1}, 4},
                        {{2, 2}, 2},
                        {{3, 4}, 2},
                        {{2, 3}, 2},
                        {{1, 2}, 2},
                        {{0, 1}, 2}});
  check_equal(order(7, in), want);
}

TEST_CASE("ordered predicate and join") {
  Product2 a = prod({{{1, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 1}});
  CHECK(check_ordered2(a));
  Product2 b = prod({{{0, 1}, 1}, {{1, 0}, 1}});
  CHECK(!check_ordered2(b));
  // parallel factors must come in non-decreasing degree
  Product2 c = prod({{{2, 2}, 1}, {{1, 1}, 1}});
  CHECK(!check_ordered2(c));
  Product2 d = prod({{{1, 1}, 1}, {{2, 2}, 1}});
  CHECK(check_ordered2(d));

  Product2 j = join2(prod({{{1, 0}, 1}, {{1, 0}, Rat(1, 2)}, {{0, 1}, 1}}));
  REQUIRE(j.size() == 2);
  CHECK(j[0].c == Rat(3, 2));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(order(0, prod({{{0, 1}, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(order(3, prod({{{0, 0}, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(order(3, prod({{{-1, 2}, 1}})), std::invalid_argument);
  // c * gcd(n) must be a positive integer
  CHECK_THROWS_AS(order(3, prod({{{1, 1}, Rat(1, 3)}})), std::invalid_argument);
  CHECK_NOTHROW(order(3, prod({{{2, 2}, Rat(1, 2)}})));
  CHECK_THROWS_AS(order(3, prod({{{1, 1}, Rat(-1)}})), std::invalid_argument);
}

TEST_CASE("factors beyond the cutoff are dropped") {
  Product2 in = prod({{{0, 1}, 1}, {{5, 3}, 1}, {{1, 0}, 1}});
  Product2 got = order(4, in);
  for (const Factor2& f : got) CHECK(f.n[0] + f.n[1] <= 4);
}

TEST_CASE("weighted degrees gate the pentagon threshold") {
  // with weights (2,1), the pair (0,1),(1,0) has weighted product degree 3
  Product2 in = prod({{{0, 1}, 1}, {{1, 0}, 1}});
  Product2 got2 = order_weighted(2, {2, 1}, in);
  // threshold 2 < 3: the commutator is out of range, factors just swap
  check_equal(got2, prod({{{1, 0}, 1}, {{0, 1}, 1}}));
  Product2 got3 = order_weighted(3, {2, 1}, in);
  check_equal(got3, prod({{{1, 0}, 1}, {{1, 1}, 1}, {{0, 1}, 1}}));
}
