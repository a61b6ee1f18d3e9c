#include "scatterlab/mutation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "scatterlab/series.hpp"

namespace scatterlab {

namespace {

// image of a support piece: optionally sheared by S_k, then re-coordinatized
Cone map_support(const FixedData& fd, int k, const Cone& c, bool sheared) {
  std::vector<MVec> gens;
  for (const MVec& g : cone_generators(c)) {
    MVec h = sheared ? s_k(fd, k, g) : g;
    gens.push_back(coordinate_change_m(fd, k, h));
  }
  return cone_from_generators(c.ambient, gens);
}

}  // namespace

ScatteringDiagram mutate_csd(const ScatteringDiagram& dia, int k) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  const int r = fd.rank;
  if (k < 0 || k >= r)
    throw std::invalid_argument("mutate_csd: direction out of range");

  NVec unit_k(r, 0);
  unit_k[k] = 1;
  Cone old_hyp = hyperplane_cone(r, pairing_mvec(fd, unit_k));

  int pivots = 0;
  for (const Wall& w : dia.walls)
    if (w.normal == unit_k) {
      ++pivots;
      if (!(w.support == old_hyp) || w.t != 1 || w.s != 1)
        throw std::invalid_argument(
            "mutate_csd: the wall normal to the mutation direction is not the "
            "plain incoming hyperplane");
    }
  if (pivots != 1)
    throw std::invalid_argument(
        "mutate_csd: expected exactly one wall with the unit normal of the "
        "mutation direction, found " + std::to_string(pivots));

  ScatteringDiagram out;
  out.seed = mutate_seed(dia.seed, k);
  out.cutoff = dia.cutoff;
  const FixedData& fd2 = out.seed.data;

  MVec zk_row(r, Rat(0));  // the functional z -> z_k cutting the two halves
  zk_row[k] = 1;
  Cone upper = cone_from_constraints(r, {}, {zk_row});
  Cone lower = cone_from_constraints(r, {}, {scale(zk_row, Rat(-1))});

  auto push_wall = [&](NVec n2, Cone c2, Int t, const Rat& s) {
    if (!in_n_plus(n2))
      throw std::runtime_error(
          "mutate_csd: transported wall normal " + vec_str(n2) +
          " left the positive cone; the input is not a consistent cluster "
          "diagram");
    for (const MVec& g : cone_generators(c2))
      if (pairing(fd2, n2, g) != 0)
        throw std::runtime_error(
            "mutate_csd: transported support escaped the normal's hyperplane");
    out.walls.push_back(Wall{std::move(c2), std::move(n2), t, s});
  };

  for (const Wall& w : dia.walls) {
    if (w.normal == unit_k) {
      // the pivot hyperplane survives as the incoming wall of the negated
      // basis vector, which has unit coordinates in the new basis again
      Wall nw;
      nw.normal = unit_k;
      nw.support = hyperplane_cone(r, pairing_mvec(fd2, unit_k));
      out.walls.push_back(nw);
      continue;
    }
    Cone below = cone_intersect(w.support, lower);
    if (below.dim == r - 1)
      push_wall(coordinate_change(fd, k, w.normal), map_support(fd, k, below, false),
                w.t, w.s);
    Cone above = cone_intersect(w.support, upper);
    if (above.dim == r - 1)
      push_wall(coordinate_change(fd, k, s_k_star(fd, k, w.normal)),
                map_support(fd, k, above, true), w.t, w.s);
  }

  /* Rejoin pass: two pieces carrying the same element whose supports assemble
     into the full hyperplane of their common normal melt back into a single
     wall. This is how the images of the other incoming hyperplanes become
     plain hyperplanes again; outgoing pieces that merely touch (like two
     cones shaking hands along a ray) fail the full-hyperplane test and stay
     separate. */
  std::vector<char> used(out.walls.size(), 0);
  std::vector<Wall> rejoined;
  for (size_t i = 0; i < out.walls.size(); ++i) {
    if (used[i]) continue;
    for (size_t j = i + 1; j < out.walls.size(); ++j) {
      if (used[j]) continue;
      const Wall& a = out.walls[i];
      const Wall& b = out.walls[j];
      if (a.normal != b.normal || a.t != b.t || a.s != b.s) continue;
      if (cone_dim(cone_intersect(a.support, b.support)) > r - 2) continue;
      std::vector<MVec> gens = cone_generators(a.support);
      std::vector<MVec> gb = cone_generators(b.support);
      gens.insert(gens.end(), gb.begin(), gb.end());
      Cone hyp = hyperplane_cone(r, pairing_mvec(fd2, a.normal));
      if (!cone_equals(cone_from_generators(r, gens), hyp)) continue;
      rejoined.push_back(Wall{hyp, a.normal, a.t, a.s});
      used[i] = used[j] = 1;
      break;
    }
  }
  std::vector<Wall> walls;
  for (size_t i = 0; i < out.walls.size(); ++i)
    if (!used[i]) walls.push_back(out.walls[i]);
  walls.insert(walls.end(), rejoined.begin(), rejoined.end());
  std::sort(walls.begin(), walls.end());
  out.walls = std::move(walls);
  return out;
}

bool csd_equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b,
                    Int cutoff) {
  const FixedData& fd = a.seed.data;
  fd.validate();
  const FixedData& fdb = b.seed.data;
  if (fd.rank != fdb.rank || fd.delta != fdb.delta || fd.omega != fdb.omega)
    throw std::invalid_argument("csd_equivalent: diagrams have different seed data");
  Int L = cutoff > 0 ? cutoff : std::max(a.cutoff, b.cutoff);
  if (L < 1) throw std::invalid_argument("csd_equivalent: cutoff must be >= 1");
  for (const ScatteringDiagram* d : {&a, &b})
    if (!check_consistency(*d, L).consistent)
      throw std::invalid_argument("csd_equivalent: input diagram is inconsistent");

  const int r = fd.rank;
  /* (1,...,1) pairs strictly positively with every nonzero n >= 0, so it is
     off every wall; likewise its negative. They are the fixed endpoints deep
     inside the all-positive and all-negative chambers. */
  MVec A(r, Rat(1));
  MVec B(r, Rat(-1));

  std::vector<MVec> avoid;
  std::set<NVec> seen;
  for (const ScatteringDiagram* d : {&a, &b})
    for (const Wall& w : d->walls)
      if (wall_degree(w) <= L && seen.insert(w.normal).second)
        avoid.push_back(pairing_mvec(fd, w.normal));

  Cone everything = cone_from_constraints(r, {}, {});
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    MVec P = general_point_on(everything, avoid, attempt);
    std::vector<MVec> path{A, P, B};
    SignedProduct pa, pb;
    try {
      pa = path_ordered_product(a, path, L);
      pb = path_ordered_product(b, path, L);
    } catch (const std::invalid_argument&) {
      continue;  // the bend clipped a joint or a support boundary; re-seed
    }
    for (int i = 0; i < 2 * r; ++i) {
      MTilde base{MVec(r, Rat(0)), NVec(r, 0)};
      if (i < r)
        base.m[i] = 1;
      else
        base.n[i - r] = 1;
      TruncatedSeries f = series_monomial(fd, base, L);
      if (!(product_action(fd, pa.factors, f, &pa.signs) ==
            product_action(fd, pb.factors, f, &pb.signs)))
        return false;
    }
    return true;
  }
  throw std::runtime_error("csd_equivalent: no admissible comparison polyline found");
}

}  // namespace scatterlab
