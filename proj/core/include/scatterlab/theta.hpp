#pragma once

#include <string>
#include <vector>

#include "scatterlab/diagram.hpp"
#include "scatterlab/series.hpp"

namespace scatterlab {

/* One bend of a broken line. At `point` the line crosses the group of walls
   with the common primitive normal `normal` and its attached exponent jumps by
   power * p1*(normal), power >= 1. coeff is the factor the bend contributes to
   the line's coefficient: with y = x^{p1*(normal)} and q = <delta(n) n, mt>_1
   read off the attached exponent, it is the y^power coefficient of
       prod over the group's records (t, s) of (1 + y^t)^{s |q|}.
   The crossing always multiplies: against the travel direction the crossing
   sign and the pairing flip together, so the exponent s|q| is the same from
   either side. */
struct Bend {
  MVec point;
  NVec normal;
  Int power = 0;
  Rat coeff = 1;
};

// a straight piece carrying coeff * x^{exponent}; it travels with velocity
// -exponent.m, so tracing backward from the endpoint means walking along +m
struct Segment {
  Rat coeff = 1;
  MTilde exponent;
};

/* A broken line ending at `endpoint`: segments in travel order, bends[j]
   joining segments[j] to segments[j+1]. segments.front() carries x^{m0} with
   coefficient 1 and comes in from infinity; segments.back() holds the
   monomial the line contributes to the theta function. */
struct BrokenLine {
  MVec endpoint;
  std::vector<Bend> bends;
  std::vector<Segment> segments;
};

/* All broken lines for the initial exponent m0 (an integral point, nonzero)
   ending at q, using the walls of degree <= cutoff and keeping final
   exponents of shift degree <= cutoff (cutoff = 0 uses dia.cutoff).

   Enumeration runs backward: for every candidate final shift the walk starts
   at q and moves along the current +m; at each wall crossing it either passes
   or sheds a positive multiple of the group normal from the exponent,
   accumulating the bend coefficient, until the exponent reaches m0 and the
   ray escapes. Each bend strictly lowers the remaining shift, so the tree is
   finite. Results are sorted by final exponent, then bend pattern.

   Throws invalid_argument when q or any traced candidate violates general
   position (endpoint on a wall, a crossing on a support boundary or on two
   walls with independent normals, a segment running inside a wall); the
   message suggests a dyadically perturbed endpoint to retry with. */
std::vector<BrokenLine> broken_lines(const ScatteringDiagram& dia, const MTilde& m0,
                                     const MVec& q, Int cutoff = 0);

/* The theta function with initial exponent m0 at the point q: the sum of the
   final monomials over broken_lines(dia, m0, q, cutoff), a series based at
   m0. For m0 = 0 it is 1 by convention. */
TruncatedSeries theta(const ScatteringDiagram& dia, const MTilde& m0, const MVec& q,
                      Int cutoff = 0);

/* Transport of the plain monomial x^{m0} from a chamber containing the
   direction m0.m to q by the path-ordered product. Requires `source`
   full-dimensional with integral m0.m inside it and q interior to the
   all-positive chamber. When source is a chamber of the mutation fan of a
   consistent diagram this equals theta(dia, m0, q, cutoff); it is the
   independent cross-check the theta tests lean on. */
TruncatedSeries theta_via_path(const ScatteringDiagram& dia, const MTilde& m0,
                               const Cone& source, const MVec& q, Int cutoff = 0);

/* True when transporting theta at qa along an admissible polyline to qb
   reproduces theta at qb modulo degree > cutoff; for a consistent diagram the
   result does not depend on the polyline. On mismatch, *diff (if given)
   receives the differing monomials. */
bool check_theta_transitivity(const ScatteringDiagram& dia, const MTilde& m0, const MVec& qa,
                              const MVec& qb, Int cutoff = 0, std::string* diff = nullptr);

/* Mutation rule for theta functions. Builds the diagrams of s and of the seed
   mutated in direction k at the given cutoff and checks that the theta of
   (t_k(q), t_k_tilde(m0)) over the mutated diagram equals the theta of
   (q, m0) over the original with the extended shear applied to every exponent
   when q_k > 0, and verbatim when q_k < 0. Both sides are expressed in the
   mutated seed's coordinates, and the comparison keeps the monomials whose
   shift degree is <= cutoff in both gradings (the shear does not preserve
   degree, so only those are computed on both sides). Throws when q lies on
   the mutation hyperplane q_k = 0. */
bool check_theta_mutation(const Seed& s, int k, const MTilde& m0, const MVec& q, Int cutoff,
                          std::string* diff = nullptr);

}  // namespace scatterlab
