#include "scatterlab/cones.hpp"

#include <algorithm>
#include <stdexcept>

#include "scatterlab/lattice.hpp"

namespace scatterlab {

namespace {

struct DDPair {
  std::vector<MVec> lineality;
  std::vector<MVec> rays;
};

/* Incremental double description: start from the full space, cut with one
   halfspace at a time. Rays are kept non-redundant only at the end (rank
   filter over tight constraints); dimensions here are tiny. */
DDPair dd_cut(int ambient, const std::vector<MVec>& halfspaces) {
  DDPair s;
  for (int i = 0; i < ambient; ++i) {
    MVec e(ambient, Rat(0));
    e[i] = 1;
    s.lineality.push_back(e);
  }
  for (const MVec& h : halfspaces) {
    // lineality crossing h: swap one basis vector for a ray
    int pivot = -1;
    for (size_t i = 0; i < s.lineality.size(); ++i)
      if (dot(h, s.lineality[i]) != 0) { pivot = (int)i; break; }
    if (pivot >= 0) {
      MVec l0 = s.lineality[pivot];
      Rat d0 = dot(h, l0);
      if (d0 < 0) { l0 = scale(l0, -1); d0 = -d0; }
      std::vector<MVec> newlin;
      for (size_t i = 0; i < s.lineality.size(); ++i) {
        if ((int)i == pivot) continue;
        const MVec& l = s.lineality[i];
        newlin.push_back(sub(l, scale(l0, dot(h, l) / d0)));
      }
      for (MVec& r : s.rays) r = sub(r, scale(l0, dot(h, r) / d0));
      s.lineality = std::move(newlin);
      s.rays.push_back(l0);
      continue;
    }
    std::vector<MVec> pos, zero, neg;
    for (const MVec& r : s.rays) {
      Rat d = dot(h, r);
      if (d > 0) pos.push_back(r);
      else if (d < 0) neg.push_back(r);
      else zero.push_back(r);
    }
    if (neg.empty()) continue;
    std::vector<MVec> next = zero;
    next.insert(next.end(), pos.begin(), pos.end());
    for (const MVec& p : pos)
      for (const MVec& m : neg)
        next.push_back(sub(scale(m, dot(h, p)), scale(p, dot(h, m))));
    s.rays = std::move(next);
  }
  return s;
}

std::vector<NVec> canonical_lineality(const std::vector<MVec>& lin) {
  if (lin.empty()) return {};
  RatMat m;
  for (const MVec& l : lin) m.push_back(l);
  rref(m);
  std::vector<NVec> out;
  for (const MVec& row : m) {
    NVec p = to_primitive_int(row);
    bool zero = std::all_of(p.begin(), p.end(), [](Int x) { return x == 0; });
    if (!zero) out.push_back(p);
  }
  return out;
}

// reduce v against the RREF lineality basis so ray representatives are unique
MVec reduce_mod_lineality(MVec v, const std::vector<NVec>& lin) {
  for (const NVec& l : lin) {
    int lead = -1;
    for (size_t i = 0; i < l.size(); ++i)
      if (l[i] != 0) { lead = (int)i; break; }
    if (lead < 0) continue;
    Rat f = v[lead] / Rat(l[lead]);
    for (size_t i = 0; i < l.size(); ++i) v[i] -= f * Rat(l[i]);
  }
  return v;
}

}  // namespace

bool Cone::operator<(const Cone& o) const {
  if (ambient != o.ambient) return ambient < o.ambient;
  if (equalities != o.equalities) return equalities < o.equalities;
  if (inequalities != o.inequalities) return inequalities < o.inequalities;
  if (lineality != o.lineality) return lineality < o.lineality;
  return rays < o.rays;
}

Cone cone_from_constraints(int ambient, const std::vector<MVec>& equalities,
                           const std::vector<MVec>& inequalities) {
  std::vector<MVec> hs;
  for (const MVec& e : equalities) {
    hs.push_back(e);
    hs.push_back(scale(e, -1));
  }
  for (const MVec& f : inequalities) hs.push_back(f);
  DDPair dd = dd_cut(ambient, hs);

  Cone c;
  c.ambient = ambient;
  c.lineality = canonical_lineality(dd.lineality);

  // keep only extreme rays: tight constraints must cut the ray's class down to
  // one dimension over the lineality space
  int lin_dim = (int)c.lineality.size();
  std::vector<MVec> all_cons = hs;
  std::vector<NVec> rays;
  for (const MVec& r : dd.rays) {
    MVec red = reduce_mod_lineality(r, c.lineality);
    NVec p = to_primitive_int(red);
    if (std::all_of(p.begin(), p.end(), [](Int x) { return x == 0; })) continue;
    RatMat tight;
    for (const MVec& h : all_cons)
      if (dot(h, r) == 0) tight.push_back(h);
    if (rat_rank(tight) != ambient - lin_dim - 1) continue;
    rays.push_back(p);
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  c.rays = std::move(rays);

  // span = lineality + rays; equalities = orthogonal complement, RREF-canonical
  RatMat span_rows;
  for (const NVec& l : c.lineality) span_rows.push_back(to_mvec(l));
  for (const NVec& r : c.rays) span_rows.push_back(to_mvec(r));
  RatMat eq;
  if (span_rows.empty()) {
    for (int i = 0; i < ambient; ++i) {
      MVec e(ambient, Rat(0));
      e[i] = 1;
      eq.push_back(e);
    }
  } else {
    eq = kernel_basis(span_rows);
  }
  rref(eq);
  for (const MVec& row : eq) {
    NVec p = to_primitive_int(row);
    if (!std::all_of(p.begin(), p.end(), [](Int x) { return x == 0; }))
      c.equalities.push_back(p);
  }
  c.dim = ambient - (int)c.equalities.size();

  /* facet normals: extreme rays of {y in span(c) : y.g >= 0 for all gens g}.
     For a full-dim-in-span cone these are the facets; lineality directions force
     y perpendicular automatically. */
  if (c.dim > lin_dim) {
    std::vector<MVec> dual_hs;
    for (const NVec& e : c.equalities) {
      // y must lie in span(c)
      dual_hs.push_back(to_mvec(e));
    }
    std::vector<MVec> dual_eq = dual_hs;  // span membership as equalities
    std::vector<MVec> dual_ineq;
    for (const NVec& l : c.lineality) {
      dual_eq.push_back(to_mvec(l));  // y.l = 0
    }
    for (const NVec& r : c.rays) dual_ineq.push_back(to_mvec(r));
    std::vector<MVec> hs2;
    for (const MVec& e : dual_eq) {
      hs2.push_back(e);
      hs2.push_back(scale(e, -1));
    }
    for (const MVec& f : dual_ineq) hs2.push_back(f);
    DDPair dual = dd_cut(ambient, hs2);
    int dual_lin = (int)canonical_lineality(dual.lineality).size();
    std::vector<NVec> facets;
    for (const MVec& y : dual.rays) {
      NVec p = to_primitive_int(y);
      if (std::all_of(p.begin(), p.end(), [](Int x) { return x == 0; })) continue;
      RatMat tight;
      for (const MVec& h : hs2)
        if (dot(h, y) == 0) tight.push_back(h);
      if (rat_rank(tight) != ambient - dual_lin - 1) continue;
      facets.push_back(p);
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    c.inequalities = std::move(facets);
  }
  return c;
}

Cone cone_from_generators(int ambient, const std::vector<MVec>& gens) {
  /* go through the H-description so that any generating set of the same cone
     lands on the same canonical form */
  RatMat span_rows;
  for (const MVec& g : gens) span_rows.push_back(g);
  RatMat eqm;
  if (span_rows.empty()) {
    for (int i = 0; i < ambient; ++i) {
      MVec e(ambient, Rat(0));
      e[i] = 1;
      eqm.push_back(e);
    }
  } else {
    eqm = kernel_basis(span_rows);
  }
  // facets of the cone = extreme rays of its dual restricted to the span
  std::vector<MVec> hs;
  for (const MVec& e : eqm) {
    hs.push_back(e);
    hs.push_back(scale(e, -1));
  }
  for (const MVec& g : gens) hs.push_back(g);
  DDPair dual = dd_cut(ambient, hs);
  std::vector<MVec> ineqs;
  for (const MVec& y : dual.rays) ineqs.push_back(y);
  // lineality directions of the dual are valid constraints in both directions;
  // they cut the span down when the primal cone is not full-dimensional, but we
  // already impose span membership via equalities below.
  std::vector<MVec> eqs;
  for (const MVec& e : eqm) eqs.push_back(e);
  return cone_from_constraints(ambient, eqs, ineqs);
}

Cone hyperplane_cone(int ambient, const MVec& normal) {
  return cone_from_constraints(ambient, {normal}, {});
}

int cone_dim(const Cone& c) { return c.dim; }

Cone cone_intersect(const Cone& a, const Cone& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("cone_intersect: ambient mismatch");
  std::vector<MVec> eqs, ineqs;
  for (const NVec& e : a.equalities) eqs.push_back(to_mvec(e));
  for (const NVec& e : b.equalities) eqs.push_back(to_mvec(e));
  for (const NVec& f : a.inequalities) ineqs.push_back(to_mvec(f));
  for (const NVec& f : b.inequalities) ineqs.push_back(to_mvec(f));
  return cone_from_constraints(a.ambient, eqs, ineqs);
}

bool cone_contains(const Cone& c, const MVec& z) {
  for (const NVec& e : c.equalities)
    if (dot(to_mvec(e), z) != 0) return false;
  for (const NVec& f : c.inequalities)
    if (dot(to_mvec(f), z) < 0) return false;
  return true;
}

bool cone_contains_rel_interior(const Cone& c, const MVec& z) {
  for (const NVec& e : c.equalities)
    if (dot(to_mvec(e), z) != 0) return false;
  for (const NVec& f : c.inequalities)
    if (dot(to_mvec(f), z) <= 0) return false;
  return true;
}

bool cone_equals(const Cone& a, const Cone& b) { return a == b; }

bool span_contains(const Cone& c, const MVec& z) {
  for (const NVec& e : c.equalities)
    if (dot(to_mvec(e), z) != 0) return false;
  return true;
}

std::vector<MVec> cone_generators(const Cone& c) {
  std::vector<MVec> gens;
  for (const NVec& l : c.lineality) {
    gens.push_back(to_mvec(l));
    gens.push_back(scale(to_mvec(l), -1));
  }
  for (const NVec& r : c.rays) gens.push_back(to_mvec(r));
  return gens;
}

MVec general_point_on(const Cone& c, const std::vector<MVec>& avoid, unsigned seed) {
  std::vector<MVec> live;  // avoided hyperplanes not containing c
  RatMat containing;
  for (const MVec& h : avoid) {
    bool contains_cone = true;
    for (const MVec& g : cone_generators(c))
      if (dot(h, g) != 0) { contains_cone = false; break; }
    if (contains_cone) containing.push_back(h);
    else live.push_back(h);
  }
  if (rat_rank(containing) >= 2)
    throw std::invalid_argument(
        "general_point_on: cone lies inside two independent avoided hyperplanes");
  if (c.dim == 0) {
    // the origin is the only point and lies on every hyperplane
    if (!live.empty())
      throw std::invalid_argument("general_point_on: zero cone cannot avoid hyperplanes");
    return MVec(c.ambient, Rat(0));
  }

  for (int k = 1 + (int)(seed % 7); k < 200; ++k) {
    MVec p(c.ambient, Rat(0));
    Rat w(1);
    Rat half(1, 2);
    Rat eps = 1;
    for (int j = 0; j < k; ++j) eps *= half;
    for (const NVec& r : c.rays) {
      p = add(p, scale(to_mvec(r), w));
      w *= (1 + eps);
    }
    Rat lw = eps;
    for (const NVec& l : c.lineality) {
      p = add(p, scale(to_mvec(l), lw));
      lw *= eps;
    }
    if (!cone_contains_rel_interior(c, p)) continue;
    bool ok = true;
    for (const MVec& h : live)
      if (dot(h, p) == 0) { ok = false; break; }
    if (ok) return p;
  }
  throw std::runtime_error("general_point_on: no general point found (degenerate data)");
}

}  // namespace scatterlab
