#pragma once

#include "scatterlab/diagram.hpp"

namespace scatterlab {

/* Piecewise-linear transport of a built diagram to the seed mutated in
   direction k (0-based). Every wall except the k-th incoming hyperplane is
   cut along that hyperplane; the piece on the nonnegative side is pushed
   through the shear z -> z + z_k p*(e_k) (which fixes the hyperplane
   pointwise), its normal through n -> n + {d_k e_k, n} e_k, and the whole
   result is re-expressed in the mutated basis. Halves that reassemble into a
   full hyperplane with equal element are rejoined, so the output again has
   one incoming hyperplane wall per basis direction.

   The output's cutoff is copied from the input. Note that mutation shifts
   the k-th normal coordinate, so a truncated input may lack walls whose
   image degree is within the cutoff; callers comparing against a freshly
   built diagram should build the input deep enough (for finite types, to
   stabilization).

   Throws invalid_argument if the input lacks the k-th incoming hyperplane
   wall or carries extra walls with that normal; throws runtime_error if a
   transported wall leaves the positive dual cone, which cannot happen for a
   consistent cluster diagram. */
ScatteringDiagram mutate_csd(const ScatteringDiagram& dia, int k);

/* Whether two consistent diagrams over the same fixed data act identically
   at the given cutoff (0 means the larger of the two stored cutoffs). Both
   inputs are consistency-checked first (invalid_argument otherwise). The
   comparison evaluates the signed wall-crossing products along one shared
   generic polyline from deep inside C+ to deep inside C-; by consistency
   the answer does not depend on the choice of polyline. */
bool csd_equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b,
                    Int cutoff = 0);

}  // namespace scatterlab
