#pragma once

#include <array>
#include <vector>

#include "scatterlab/rational.hpp"

namespace scatterlab {

/* One factor of a rank-2 dilogarithm product: exponent vector n (both
   coordinates >= 0, not both zero) and a positive rational exponent c.
   Validity requires c * gcd(n1, n2) to be a positive integer. */
struct Factor2 {
  std::array<Int, 2> n{0, 0};
  Rat c{0};

  bool operator==(const Factor2& o) const { return n == o.n && c == o.c; }
};

using Product2 = std::vector<Factor2>;

/* Rank-2 ordering: rewrites an arbitrary product of dilogarithm elements into
   the unique anti-clockwise-ordered form modulo degree > L, using only swaps of
   commuting factors and pentagon moves. The skew form is {e2, e1} = 1; a pair
   (left, right) is in order when bf(left, right) = left[1]*right[0] -
   left[0]*right[1] <= 0, with parallel factors tie-broken by degree.

   `weights` generalizes the degree used in the threshold and tie-break checks
   to w1*n1 + w2*n2; (1, 1) reproduces the plain algorithm.

   The rewrite never fails on valid input; an internal inconsistency (e.g. a
   fractional unit count in a pentagon decomposition) throws. */
Product2 order(Int L, const Product2& c);
Product2 order_weighted(Int L, std::array<Int, 2> weights, const Product2& c);

/* Variant for products whose exponents are normalized against a rescaled skew
   form (joint-local runs inside a bigger lattice): the c * gcd(n) integrality
   precondition only makes sense in the standard normalization, so it is not
   enforced here. The pentagon bookkeeping still verifies its own unit counts
   and throws on genuine inconsistency. */
Product2 order_rescaled(Int L, std::array<Int, 2> weights, const Product2& c);

bool check_ordered2(const Product2& c, std::array<Int, 2> weights = {1, 1});
Int bf2(const std::array<Int, 2>& a, const std::array<Int, 2>& b);

// merge adjacent factors with equal exponent vectors (sum of exponents)
Product2 join2(const Product2& c);

void validate_product2(Int L, const Product2& c);

}  // namespace scatterlab
