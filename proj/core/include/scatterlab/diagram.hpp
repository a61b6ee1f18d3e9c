#pragma once

#include <array>
#include <string>
#include <vector>

#include "scatterlab/cones.hpp"
#include "scatterlab/dilog.hpp"
#include "scatterlab/lattice.hpp"

namespace scatterlab {

/* One wall: a codimension-1 cone inside normal^perp carrying the group element
   Psi[t*normal]^{s * delta(t*normal)}. The normal is primitive and in N+.
   Several records may share a support; they commute, and the total element on
   the support is the product of the records. */
struct Wall {
  Cone support;
  NVec normal;
  Int t = 1;
  Rat s = 1;

  bool operator==(const Wall& o) const = default;
  bool operator<(const Wall& o) const;
};

struct ScatteringDiagram {
  Seed seed;
  Int cutoff = 0;
  std::vector<Wall> walls;
};

/* Codimension-2 intersection of two wall supports. members indexes every wall
   whose support contains the whole joint; perpendicular when some pair of
   member normals has nonzero skew pairing (all member normals lie in the
   rank-2 space killed by the joint, so this does not depend on the pair). */
struct Joint {
  Cone cone;
  std::vector<int> members;
  bool perpendicular = false;
};

/* Result of walking a polyline: wall elements in application order, leftmost
   factor crossed last, with the crossing sign and the wall index per factor. */
struct SignedProduct {
  DilogProduct factors;
  std::vector<int> signs;
  std::vector<int> wall_index;
};

struct JointCheck {
  Joint joint;
  bool ok = false;
  MVec center;        // the general point the loop was built around
  Rat loop_scale = 0; // the h that produced an admissible loop
  std::string detail; // failure description when !ok
};

struct ConsistencyReport {
  bool consistent = false;
  std::vector<JointCheck> joints;
};

// the group element Psi[t*n]^{s*delta(t*n)} carried by a wall
DilogFactor wall_factor(const FixedData& fd, const Wall& w);
// a wall is incoming when p*(normal) lies in its support
bool wall_is_incoming(const FixedData& fd, const Wall& w);
Int wall_degree(const Wall& w); // deg(t * normal)
std::string wall_str(const FixedData& fd, const Wall& w);

// the hyperplane functional of n as an f-coordinate vector (entries n_i/d_i)
MVec pairing_mvec(const FixedData& fd, const NVec& n);

// the r initial walls (e_i^perp, Psi[e_i]^{d_i})
ScatteringDiagram incoming_walls(const Seed& s);

/* Degree-by-degree construction of the consistent diagram up to total degree
   `cutoff`: at each level every perpendicular joint is localized to a rank-2
   ordering problem and the newly created factors become outgoing walls hung on
   the joint. Deterministic; throws on internal inconsistency (which would mean
   the seed data violates the construction's invariants). */
ScatteringDiagram build_csd(const Seed& s, Int cutoff);

std::vector<Joint> find_joints(const ScatteringDiagram& dia);

/* Wall crossings along the polyline, in application order (the factor crossed
   first is applied first, i.e. sits rightmost). A crossing of wall (d, n) at z
   moving with velocity v counts with sign +1 when <n, v> < 0. The polyline
   must be admissible for the degree-`cutoff` part of the diagram: waypoints off
   every support, all crossings transversal through relative interiors, and no
   crossing point on a second support with an independent normal. Throws
   invalid_argument naming the offending wall otherwise. cutoff=0 uses
   dia.cutoff. */
SignedProduct path_ordered_product(const ScatteringDiagram& dia,
                                   const std::vector<MVec>& waypoints,
                                   Int cutoff = 0);

/* Product of the elements of all walls containing z. Requires z general: in
   the relative interior of each such support, all sharing one normal
   direction. Empty product when z lies on no wall. */
DilogProduct total_wall_element(const ScatteringDiagram& dia, const MVec& z);

/* Around every joint, builds a small rational loop (a square of scale 2^-k,
   shrunk until admissible and crossing only walls through the loop center) and
   tests that the signed path-ordered product acts as the identity on the 2r
   basis monomials modulo degree > cutoff. cutoff=0 uses dia.cutoff. */
ConsistencyReport check_consistency(const ScatteringDiagram& dia, Int cutoff = 0);

// every record with a positive integer exponent s becomes s unit records; the
// split presentation in which each wall carries Psi[t n]^{delta(t n)}
ScatteringDiagram split_s_walls(const ScatteringDiagram& dia);
// inverse normalization: records sharing (support, normal, t) add exponents
ScatteringDiagram merge_parallel_walls(const ScatteringDiagram& dia);

/* A chamber of the mutation fan: the closure of the image of the all-positive
   orthant of the seed reached by `word`, pulled back through the
   piecewise-linear wall-crossing transformations. */
struct GCone {
  std::vector<int> word;
  Cone cone;
};

/* All chambers reachable by mutation words of length <= max_depth, in
   breadth-first order, each geometrically distinct cone reported once with
   its first (hence shortest) word. When cutoff >= 1 the result is verified
   against build_csd(s, cutoff): every facet whose primitive normal n has
   degree <= cutoff must carry the total wall element Psi[n]^{delta(n)}.
   A violation throws runtime_error. */
std::vector<GCone> g_cones(const Seed& s, Int cutoff, int max_depth);

/* Mutation admissibility of the outgoing walls. For a wall with primitive
   normal a = sum_i a_i e_i and a general support point z, mutating in
   direction k rewrites the k-th normal coordinate as
       -a_k + sum_j [-b_kj]_+ a_j   (z_k > 0),
       -a_k + sum_j [+b_kj]_+ a_j   (z_k < 0),
   and a diagram of cluster origin keeps every such value nonnegative.
   Incoming walls and unit normals are exempt (their negative halves rejoin
   with the pivot hyperplane instead). */
struct AdmissibleCheck {
  int wall = -1;  // index into dia.walls
  bool ok = false;
  MVec sample;               // the general support point used
  std::vector<Rat> shifted;  // the rewritten k-th coordinate, per direction k
};

struct AdmissibleReport {
  bool ok = true;
  std::vector<AdmissibleCheck> checks;
};

AdmissibleReport admissible_region_check(const ScatteringDiagram& dia);

/* Rank 2 only, with b_12 < 0 < b_21: the closed cone between the returned
   rays (|b_12|, -1) and (1, -|b_21|) is exactly where outgoing supports may
   live by the nonnegativity above. */
std::array<MVec, 2> rank2_admissible_rays(const FixedData& fd);

}  // namespace scatterlab
