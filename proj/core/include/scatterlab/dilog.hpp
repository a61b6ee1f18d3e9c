#pragma once

#include <vector>

#include "scatterlab/lattice.hpp"
#include "scatterlab/ordering.hpp"

namespace scatterlab {

/* A factor Psi[n]^c of a dilogarithm product over the group attached to a
   seed. n may be non-primitive; validity requires c * content(n) ... for the
   rank-2 rewriting this matches the unit-decomposition convention. The product
   is stored left to right, with the leftmost factor applied last. */
struct DilogFactor {
  NVec n;
  Rat c;

  bool operator==(const DilogFactor& o) const = default;
};

using DilogProduct = std::vector<DilogFactor>;

/* A product is ordered when each adjacent pair has {left, right} <= 0 and
   parallel neighbours come in non-decreasing degree; anti-ordered is the
   mirror image. */
bool is_ordered(const FixedData& fd, const DilogProduct& c);
bool is_anti_ordered(const FixedData& fd, const DilogProduct& c);

/* Pentagon move on an adjacent pair with {left.n, right.n} = v > 0 and both
   exponents equal to 1/v:
     Psi[n']^{1/v} Psi[n]^{1/v} = Psi[n]^{1/v} Psi[n+n']^{1/v} Psi[n']^{1/v}. */
DilogProduct pentagon_rewrite(const FixedData& fd, const DilogFactor& left,
                              const DilogFactor& right);

// merge adjacent equal exponent vectors; split integer exponents > 1 into units
DilogProduct join_product(const DilogProduct& c);
DilogProduct decompose_unit(const DilogProduct& c);

/* Rank-2 ordering of a product in the normalized form {e2, e1} = 1 (the seed's
   own coordinates for rank-2 seeds, or a joint's transverse coordinates in
   higher rank). Wraps the Product2 engine. */
DilogProduct order_product(Int cutoff, const DilogProduct& c);

Product2 to_product2(const DilogProduct& c);
DilogProduct from_product2(const Product2& c);

}  // namespace scatterlab
