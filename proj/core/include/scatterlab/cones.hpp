#pragma once

#include <optional>
#include <vector>

#include "scatterlab/linalg.hpp"
#include "scatterlab/rational.hpp"

namespace scatterlab {

/* Rational polyhedral cone in the dual space (f-coordinates, standard dot
   product for constraints). Stored in canonical form:
     - equalities: RREF-normalized primitive integer forms cutting out the span
     - inequalities: primitive facet normals inside the span, sorted
     - lineality: RREF-normalized basis of the largest linear subspace
     - rays: extreme ray representatives reduced against the lineality basis,
       primitive, sorted
   Two cones are geometrically equal iff their canonical forms match. */
struct Cone {
  int ambient = 0;
  std::vector<NVec> equalities;
  std::vector<NVec> inequalities;
  std::vector<NVec> lineality;
  std::vector<NVec> rays;
  int dim = 0;

  bool operator==(const Cone& o) const = default;
  bool operator<(const Cone& o) const;
};

Cone cone_from_generators(int ambient, const std::vector<MVec>& gens);
Cone cone_from_constraints(int ambient, const std::vector<MVec>& equalities,
                           const std::vector<MVec>& inequalities);
// the hyperplane normal^perp (standard dot) as a non-pointed cone
Cone hyperplane_cone(int ambient, const MVec& normal);

int cone_dim(const Cone& c);
Cone cone_intersect(const Cone& a, const Cone& b);
bool cone_contains(const Cone& c, const MVec& z);
bool cone_contains_rel_interior(const Cone& c, const MVec& z);
bool cone_equals(const Cone& a, const Cone& b);
bool span_contains(const Cone& c, const MVec& z);
// all generators, lineality as +/- pairs first, then the extreme rays
std::vector<MVec> cone_generators(const Cone& c);

/* Deterministic rational point in the relative interior of c avoiding every
   hyperplane h^perp from `avoid` that does not contain c. Dyadic perturbation
   of the generator barycenter; the starting scale is taken from `seed`
   (see SCATTERLAB_SEED). Throws if c lies inside two independent avoided
   hyperplanes, since no useful general point exists then. */
MVec general_point_on(const Cone& c, const std::vector<MVec>& avoid, unsigned seed = 0);

}  // namespace scatterlab
