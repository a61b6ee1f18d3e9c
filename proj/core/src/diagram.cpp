#include "scatterlab/diagram.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "scatterlab/linalg.hpp"
#include "scatterlab/ordering.hpp"
#include "scatterlab/series.hpp"

namespace scatterlab {

bool Wall::operator<(const Wall& o) const {
  if (normal != o.normal) return normal < o.normal;
  if (!(support == o.support)) return support < o.support;
  if (t != o.t) return t < o.t;
  return s < o.s;
}

MVec pairing_mvec(const FixedData& fd, const NVec& n) {
  MVec row(fd.rank);
  for (int i = 0; i < fd.rank; ++i) {
    Rat q(n[i], fd.delta[i]);
    q.canonicalize();
    row[i] = q;
  }
  return row;
}

DilogFactor wall_factor(const FixedData& fd, const Wall& w) {
  NVec v = scale(w.normal, w.t);
  return DilogFactor{v, w.s * delta_of(fd, v)};
}

bool wall_is_incoming(const FixedData& fd, const Wall& w) {
  return cone_contains(w.support, p_star(fd, w.normal));
}

Int wall_degree(const Wall& w) { return w.t * deg(w.normal); }

std::string wall_str(const FixedData& fd, const Wall& w) {
  std::ostringstream os;
  DilogFactor g = wall_factor(fd, w);
  os << "Psi[" << vec_str(g.n) << "]^" << rat_str(g.c) << " on cone{";
  bool first = true;
  for (const NVec& l : w.support.lineality) {
    os << (first ? "" : ", ") << "+-" << vec_str(l);
    first = false;
  }
  for (const NVec& r : w.support.rays) {
    os << (first ? "" : ", ") << vec_str(r);
    first = false;
  }
  os << "}";
  return os.str();
}

ScatteringDiagram incoming_walls(const Seed& s) {
  s.data.validate();
  ScatteringDiagram dia;
  dia.seed = s;
  dia.cutoff = 1;
  for (int i = 0; i < s.data.rank; ++i) {
    Wall w;
    w.normal = NVec(s.data.rank, 0);
    w.normal[i] = 1;
    w.support = hyperplane_cone(s.data.rank, pairing_mvec(s.data, w.normal));
    dia.walls.push_back(w);
  }
  return dia;
}

std::vector<Joint> find_joints(const ScatteringDiagram& dia) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  const int r = fd.rank;
  const auto& walls = dia.walls;

  std::set<Cone> seen;
  std::vector<Cone> cones;
  for (size_t i = 0; i < walls.size(); ++i)
    for (size_t j = i + 1; j < walls.size(); ++j) {
      if (walls[i].support == walls[j].support) continue;
      Cone c = cone_intersect(walls[i].support, walls[j].support);
      if (c.dim != r - 2) continue;
      if (seen.insert(c).second) cones.push_back(c);
    }
  std::sort(cones.begin(), cones.end());

  std::vector<Joint> out;
  for (const Cone& c : cones) {
    Joint jt;
    jt.cone = c;
    auto gens = cone_generators(c);
    for (size_t k = 0; k < walls.size(); ++k) {
      bool inside = true;
      for (const MVec& g : gens)
        if (!cone_contains(walls[k].support, g)) {
          inside = false;
          break;
        }
      if (inside) jt.members.push_back((int)k);
    }
    for (size_t a = 0; a < jt.members.size() && !jt.perpendicular; ++a)
      for (size_t b = a + 1; b < jt.members.size(); ++b)
        if (skew(fd, walls[jt.members[a]].normal, walls[jt.members[b]].normal) != 0) {
          jt.perpendicular = true;
          break;
        }
    out.push_back(jt);
  }
  return out;
}

namespace {

// basis of {n : <n, z> = 0 for every z in the cone}; saturated, so primitivity
// inside the sublattice agrees with primitivity in N
std::vector<NVec> joint_normal_space(const FixedData& fd, const Cone& joint) {
  RatMat rows;
  for (const MVec& g : cone_generators(joint)) {
    MVec row(fd.rank);
    for (int i = 0; i < fd.rank; ++i) row[i] = g[i] / fd.delta[i];
    rows.push_back(row);
  }
  if (rows.empty()) rows.push_back(MVec(fd.rank, Rat(0)));
  return kernel_basis_int(rows);
}

// coordinates of V in the plane basis (a, b); exact, throws if V lies outside
std::pair<Rat, Rat> in_basis2(const NVec& a, const NVec& b, const NVec& V) {
  const int r = (int)a.size();
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Rat det = Rat(a[i]) * b[j] - Rat(a[j]) * b[i];
      if (det == 0) continue;
      Rat x = (Rat(V[i]) * b[j] - Rat(V[j]) * b[i]) / det;
      Rat y = (Rat(a[i]) * V[j] - Rat(a[j]) * V[i]) / det;
      for (int k = 0; k < r; ++k)
        if (x * a[k] + y * b[k] != V[k])
          throw std::runtime_error("in_basis2: vector is outside the plane");
      return {x, y};
    }
  throw std::runtime_error("in_basis2: degenerate basis");
}

/* The transverse frame of a joint: the rank-2 space of pairing functionals
   vanishing on it, and for skew-nondegenerate (perpendicular) joints the
   canonical nonnegative pair e1, e2 with {e2, e1} = kappa > 0. Every member
   normal is then a nonnegative rational combination x e1 + y e2. */
struct JointFrame {
  std::vector<NVec> basis;
  NVec e1, e2;
  Rat kappa;
};

JointFrame joint_frame(const FixedData& fd, const Cone& joint) {
  JointFrame fr;
  fr.basis = joint_normal_space(fd, joint);
  if (fr.basis.size() != 2)
    throw std::runtime_error("joint normal space is not rank 2");
  const NVec& u = fr.basis[0];
  const NVec& v = fr.basis[1];
  std::vector<MVec> ineqs;
  for (int i = 0; i < fd.rank; ++i) {
    if (u[i] == 0 && v[i] == 0) continue;
    ineqs.push_back(MVec{Rat(u[i]), Rat(v[i])});
  }
  Cone quad = cone_from_constraints(2, {}, ineqs);
  if (quad.dim != 2 || !quad.lineality.empty() || quad.rays.size() != 2)
    throw std::runtime_error("joint nonnegative normals do not form a 2d pointed cone");
  auto lift = [&](const NVec& ab) {
    return primitive_part(add(scale(u, ab[0]), scale(v, ab[1])));
  };
  NVec c1 = lift(quad.rays[0]);
  NVec c2 = lift(quad.rays[1]);
  if (!in_n_plus(c1) || !in_n_plus(c2))
    throw std::runtime_error("joint quadrant ray escaped the nonnegative span");
  Rat k = skew(fd, c2, c1);
  if (k > 0) {
    fr.e1 = c1;
    fr.e2 = c2;
    fr.kappa = k;
  } else if (k < 0) {
    fr.e1 = c2;
    fr.e2 = c1;
    fr.kappa = -k;
  } else {
    throw std::runtime_error("joint quadrant pair is skew-degenerate");
  }
  return fr;
}

Int lcm_with_den(Int acc, const Rat& q) {
  mpz_class l;
  mpz_class a(acc);
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), q.get_den().get_mpz_t());
  if (!l.fits_slong_p()) throw std::runtime_error("joint coordinate denominator overflow");
  return l.get_si();
}

/* One construction step at one perpendicular joint.

   Everything at the joint happens in the rank-2 lattice of normals vanishing
   on it. Writing each member wall vector t*n as x e1 + y e2 (x, y >= 0,
   possibly rational when Z e1 + Z e2 has index > 1 there), the wall's trace
   near the joint lies on the line x u1 + y u2 = 0 of the local coordinates
   u(z) = (<e1, z>, <e2, z>). The side toward (-y, x) is the incoming
   ("second quadrant") side; the side toward (y, -x) is where the construction
   hangs outgoing walls.

   The rank-2 rewriting engine assumes the normalized skew form {(0,1),(1,0)}
   = 1 and integer vectors, so joint coordinates are rescaled: vectors by rho
   (the common denominator), exponents by lambda = kappa / rho^2, the degree
   cutoff by rho. The incoming-side product, anti-ordered by decreasing slope,
   is then ordered at one degree above the current level. Ordered factors of
   degree <= level must reproduce exactly the walls already hanging on the
   outgoing side (this is the consistency condition, verified here); factors
   of degree level+1 become new walls sigma(joint, -p*(v)). */
std::vector<Wall> process_joint(const FixedData& fd, const std::vector<Wall>& walls,
                                const Joint& joint, Int level) {
  JointFrame fr = joint_frame(fd, joint.cone);
  auto joint_gens = cone_generators(joint.cone);

  struct Raw {
    Rat x, y, c;
    bool second = false, fourth = false;
  };
  std::vector<Raw> raws;
  Int rho = 1;
  for (int idx : joint.members) {
    const Wall& w = walls[idx];
    DilogFactor g = wall_factor(fd, w);
    Raw rw;
    std::tie(rw.x, rw.y) = in_basis2(fr.e1, fr.e2, g.n);
    if (rw.x < 0 || rw.y < 0)
      throw std::runtime_error("member wall vector left the joint quadrant");
    rw.c = g.c;
    for (const MVec& gen : cone_generators(w.support)) {
      // dot(u(gen), (-y, x)) decides which side of the joint the support runs
      Rat side = -rw.y * pairing(fd, fr.e1, gen) + rw.x * pairing(fd, fr.e2, gen);
      if (side > 0) rw.second = true;
      if (side < 0) rw.fourth = true;
    }
    if (!rw.second && !rw.fourth)
      throw std::runtime_error("member wall support collapsed onto the joint");
    rho = lcm_with_den(rho, rw.x);
    rho = lcm_with_den(rho, rw.y);
    raws.push_back(rw);
  }

  Rat lambda = fr.kappa / (Rat(rho) * rho);
  std::array<Int, 2> weights{deg(fr.e1), deg(fr.e2)};

  std::map<std::array<Int, 2>, Rat> cin, cfourth;
  for (const Raw& rw : raws) {
    std::array<Int, 2> v{to_int(rw.x * rho), to_int(rw.y * rho)};
    if (rw.second) cin[v] += lambda * rw.c;
    if (rw.fourth) cfourth[v] += lambda * rw.c;
  }

  Product2 cin_prod;
  for (const auto& [v, c] : cin) cin_prod.push_back(Factor2{v, c});
  std::sort(cin_prod.begin(), cin_prod.end(), [&](const Factor2& a, const Factor2& b) {
    Int cross = a.n[1] * b.n[0] - b.n[1] * a.n[0];
    if (cross != 0) return cross > 0;  // steeper slope first (anti-ordered)
    Int wa = weights[0] * a.n[0] + weights[1] * a.n[1];
    Int wb = weights[0] * b.n[0] + weights[1] * b.n[1];
    return wa > wb;
  });

  Product2 out = order_rescaled(rho * (level + 1), weights, cin_prod);

  std::map<std::array<Int, 2>, Rat> low;
  std::vector<Wall> fresh;
  for (const Factor2& f : out) {
    NVec V(fd.rank);
    for (int i = 0; i < fd.rank; ++i) {
      Rat q = (Rat(f.n[0]) * fr.e1[i] + Rat(f.n[1]) * fr.e2[i]) / rho;
      if (!is_integer(q))
        throw std::runtime_error("ordered joint factor escaped the lattice");
      V[i] = to_int(q);
    }
    if (!in_n_plus(V)) throw std::runtime_error("ordered joint factor left N+");
    Int d = deg(V);
    if (d <= level) {
      low[f.n] += f.c;
      continue;
    }
    if (d != level + 1)
      throw std::runtime_error("ordered joint factor skipped a degree level");
    Rat c_true = f.c / lambda;
    Rat s = c_true / delta_of(fd, V);
    if (!is_positive_integer(s))
      throw std::runtime_error("attached wall exponent is not a positive integer: " +
                               rat_str(s));
    Wall w;
    w.normal = primitive_part(V);
    w.t = content(V);
    w.s = s;
    std::vector<MVec> gens = joint_gens;
    gens.push_back(scale(p_star(fd, V), Rat(-1)));
    w.support = cone_from_generators(fd.rank, gens);
    if (w.support.dim != fd.rank - 1)
      throw std::runtime_error("attached wall support is not codimension 1");
    fresh.push_back(w);
  }

  if (low != cfourth)
    throw std::runtime_error(
        "inconsistent joint: ordered low-degree factors do not match the attached "
        "walls (quadrant pair " +
        vec_str(fr.e1) + ", " + vec_str(fr.e2) + ")");
  return fresh;
}

}  // namespace

ScatteringDiagram build_csd(const Seed& s, Int cutoff) {
  s.data.validate();
  if (s.data.rank < 2) throw std::invalid_argument("build_csd: rank must be >= 2");
  if (cutoff < 1) throw std::invalid_argument("build_csd: cutoff must be >= 1");

  ScatteringDiagram dia = incoming_walls(s);
  for (Int level = 1; level < cutoff; ++level) {
    dia.cutoff = level;
    std::vector<Wall> fresh;
    for (const Joint& jt : find_joints(dia)) {
      if (!jt.perpendicular) continue;
      auto nw = process_joint(s.data, dia.walls, jt, level);
      fresh.insert(fresh.end(), nw.begin(), nw.end());
    }
    std::sort(fresh.begin(), fresh.end());
    dia.walls.insert(dia.walls.end(), fresh.begin(), fresh.end());
  }
  dia.cutoff = cutoff;
  return dia;
}

namespace {

struct Crossing {
  int seg;
  Rat u;
  int wall;
  int sign;
};

// the parameter interval of {u in [0,1] : A + u (B - A) in c}, or false
bool segment_meets_cone(const Cone& c, const MVec& A, const MVec& B) {
  Rat lo = 0, hi = 1;
  MVec dir = sub(B, A);
  auto tighten = [&](const MVec& row, bool equality) {
    Rat off = dot(row, A);
    Rat slope = dot(row, dir);
    if (slope == 0) {
      if (equality ? off != 0 : off < 0) lo = 1, hi = 0;
      return;
    }
    Rat at = -off / slope;
    if (equality) {
      if (at < lo || at > hi) {
        lo = 1, hi = 0;
      } else {
        lo = hi = at;
      }
    } else if (slope > 0) {
      if (at > lo) lo = at;
    } else {
      if (at < hi) hi = at;
    }
  };
  for (const NVec& e : c.equalities) {
    tighten(to_mvec(e), true);
    if (lo > hi) return false;
  }
  for (const NVec& f : c.inequalities) {
    tighten(to_mvec(f), false);
    if (lo > hi) return false;
  }
  return lo <= hi;
}

}  // namespace

SignedProduct path_ordered_product(const ScatteringDiagram& dia,
                                   const std::vector<MVec>& waypoints, Int cutoff) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  if (waypoints.size() < 2)
    throw std::invalid_argument("path_ordered_product: need at least two waypoints");

  std::vector<int> active;
  for (size_t i = 0; i < dia.walls.size(); ++i)
    if (wall_degree(dia.walls[i]) <= L) active.push_back((int)i);

  for (size_t p = 0; p < waypoints.size(); ++p)
    for (int i : active)
      if (cone_contains(dia.walls[i].support, waypoints[p]))
        throw std::invalid_argument("path_ordered_product: waypoint " +
                                    std::to_string(p) + " lies on wall " +
                                    wall_str(fd, dia.walls[i]));

  std::vector<Crossing> crossings;
  for (size_t seg = 0; seg + 1 < waypoints.size(); ++seg) {
    const MVec& A = waypoints[seg];
    const MVec& B = waypoints[seg + 1];
    for (int i : active) {
      const Wall& w = dia.walls[i];
      Rat pa = pairing(fd, w.normal, A);
      Rat pb = pairing(fd, w.normal, B);
      if (pa == 0 && pb == 0) {
        // the segment runs inside the wall's hyperplane
        if (segment_meets_cone(w.support, A, B))
          throw std::invalid_argument(
              "path_ordered_product: segment " + std::to_string(seg) +
              " runs inside wall " + wall_str(fd, w));
        continue;
      }
      if (pa == 0 || pb == 0 || (pa > 0) == (pb > 0)) continue;
      Rat u = pa / (pa - pb);
      MVec z = add(A, scale(sub(B, A), u));
      if (!cone_contains(w.support, z)) continue;
      if (!cone_contains_rel_interior(w.support, z))
        throw std::invalid_argument("path_ordered_product: segment " +
                                    std::to_string(seg) +
                                    " meets the boundary of wall " + wall_str(fd, w));
      for (int j : active) {
        if (j == i) continue;
        const Wall& other = dia.walls[j];
        if (other.normal == w.normal) continue;
        if (cone_contains(other.support, z))
          throw std::invalid_argument(
              "path_ordered_product: crossing of wall " + wall_str(fd, w) +
              " lies on wall " + wall_str(fd, other) + " with an independent normal");
      }
      // positive sign when moving against the normal: <n, B - A> < 0
      int sign = pa > pb ? 1 : -1;
      crossings.push_back(Crossing{(int)seg, u, i, sign});
    }
  }

  std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
    if (a.seg != b.seg) return a.seg < b.seg;
    if (a.u != b.u) return a.u < b.u;
    return a.wall < b.wall;
  });

  SignedProduct sp;
  for (auto it = crossings.rbegin(); it != crossings.rend(); ++it) {
    sp.factors.push_back(wall_factor(fd, dia.walls[it->wall]));
    sp.signs.push_back(it->sign);
    sp.wall_index.push_back(it->wall);
  }
  return sp;
}

DilogProduct total_wall_element(const ScatteringDiagram& dia, const MVec& z) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  DilogProduct out;
  const NVec* seen_normal = nullptr;
  for (const Wall& w : dia.walls) {
    if (!cone_contains(w.support, z)) continue;
    if (!cone_contains_rel_interior(w.support, z))
      throw std::invalid_argument("total_wall_element: z is on the boundary of wall " +
                                  wall_str(fd, w));
    if (seen_normal && !(*seen_normal == w.normal))
      throw std::invalid_argument(
          "total_wall_element: z lies on walls with independent normals");
    seen_normal = &w.normal;
    out.push_back(wall_factor(fd, w));
  }
  return out;
}

ConsistencyReport check_consistency(const ScatteringDiagram& dia, Int cutoff) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  if (L < 1) throw std::invalid_argument("check_consistency: cutoff must be >= 1");

  ScatteringDiagram part{dia.seed, L, {}};
  for (const Wall& w : dia.walls)
    if (wall_degree(w) <= L) part.walls.push_back(w);

  std::vector<MTilde> probe_bases;
  std::vector<std::string> probe_names;
  for (int i = 0; i < fd.rank; ++i) {
    MTilde mf{MVec(fd.rank, Rat(0)), NVec(fd.rank, 0)};
    mf.m[i] = 1;
    probe_bases.push_back(mf);
    probe_names.push_back("x^{f_" + std::to_string(i + 1) + "}");
    MTilde me{MVec(fd.rank, Rat(0)), NVec(fd.rank, 0)};
    me.n[i] = 1;
    probe_bases.push_back(me);
    probe_names.push_back("x^{e_" + std::to_string(i + 1) + "}");
  }

  ConsistencyReport rep;
  rep.consistent = true;

  for (const Joint& jt : find_joints(part)) {
    JointCheck chk;
    chk.joint = jt;

    // a general point of the joint: avoid every wall hyperplane that does not
    // contain the joint's span, and prefer seeds whose wall set through the
    // point is exactly the member list
    auto jgens = cone_generators(jt.cone);
    std::vector<MVec> avoid;
    for (const Wall& w : part.walls) {
      bool contains_span = true;
      for (const MVec& g : jgens)
        if (pairing(fd, w.normal, g) != 0) {
          contains_span = false;
          break;
        }
      if (!contains_span) avoid.push_back(pairing_mvec(fd, w.normal));
    }
    std::set<int> want(jt.members.begin(), jt.members.end());
    MVec z0;
    std::set<int> through;
    for (unsigned seed = 0; seed < 8; ++seed) {
      MVec cand = general_point_on(jt.cone, avoid, seed);
      std::set<int> cm;
      for (size_t i = 0; i < part.walls.size(); ++i)
        if (cone_contains(part.walls[i].support, cand)) cm.insert((int)i);
      if (seed == 0 || cm == want) {
        z0 = cand;
        through = cm;
      }
      if (cm == want) break;
    }
    chk.center = z0;

    // transverse dual directions: <basis[i], u_j> = delta_ij
    auto basis = joint_normal_space(fd, jt.cone);
    if (basis.size() != 2)
      throw std::runtime_error("check_consistency: joint normal space is not rank 2");
    RatMat aug(2, MVec(fd.rank + 2, Rat(0)));
    for (int i = 0; i < fd.rank; ++i) {
      aug[0][i] = pairing_mvec(fd, basis[0])[i];
      aug[1][i] = pairing_mvec(fd, basis[1])[i];
    }
    aug[0][fd.rank] = 1;
    aug[1][fd.rank + 1] = 1;
    auto piv = rref(aug);
    MVec u1(fd.rank, Rat(0)), u2(fd.rank, Rat(0));
    for (size_t k = 0; k < piv.size(); ++k) {
      if (piv[k] >= fd.rank)
        throw std::runtime_error("check_consistency: transverse frame is degenerate");
      u1[piv[k]] = aug[k][fd.rank];
      u2[piv[k]] = aug[k][fd.rank + 1];
    }

    /* Loop corners z0 + h (+-u1 +- t u2). The aspect t must keep corners off
       every member hyperplane: a member with normal a basis[0] + b basis[1]
       passes through a corner exactly when t = |a/b|. */
    std::set<Rat> bad;
    for (int idx : through) {
      auto [a, b] = in_basis2(basis[0], basis[1], part.walls[idx].normal);
      if (b != 0) {
        Rat q = a / b;
        bad.insert(q < 0 ? -q : q);
      }
    }
    Rat aspect = 1;
    for (Int d = 1;; ++d) {
      aspect = Rat(1, d);
      aspect.canonicalize();
      if (!bad.count(aspect)) break;
    }

    bool built = false;
    SignedProduct sp;
    Rat h(1);
    for (int k = 0; k < 100 && !built; ++k, h /= 2) {
      MVec d1 = add(scale(u1, h), scale(u2, h * aspect));
      MVec d2 = add(scale(u1, -h), scale(u2, h * aspect));
      std::vector<MVec> loop{add(z0, d1), add(z0, d2), sub(z0, d1), sub(z0, d2),
                             add(z0, d1)};
      try {
        sp = path_ordered_product(part, loop, L);
      } catch (const std::invalid_argument&) {
        continue;
      }
      bool clean = true;
      for (int wi : sp.wall_index)
        if (!through.count(wi)) {
          clean = false;
          break;
        }
      if (!clean) continue;
      built = true;
      chk.loop_scale = h;
    }

    if (!built) {
      chk.ok = false;
      chk.detail = "no admissible loop around " + vec_str(z0) + " found";
    } else {
      chk.ok = true;
      for (size_t p = 0; p < probe_bases.size() && chk.ok; ++p) {
        TruncatedSeries base = series_monomial(fd, probe_bases[p], L);
        TruncatedSeries acted = product_action(fd, sp.factors, base, &sp.signs);
        if (acted == base) continue;
        chk.ok = false;
        // report the lowest-degree discrepancy
        NVec low_key;
        Rat delta_c;
        bool found = false;
        auto scan = [&](const std::map<NVec, Rat>& lhs, const std::map<NVec, Rat>& rhs) {
          for (const auto& [key, val] : lhs) {
            auto it = rhs.find(key);
            Rat d = val - (it == rhs.end() ? Rat(0) : it->second);
            if (d == 0) continue;
            if (!found || deg(key) < deg(low_key) || (deg(key) == deg(low_key) && key < low_key)) {
              low_key = key;
              delta_c = d;
              found = true;
            }
          }
        };
        scan(acted.terms, base.terms);
        scan(base.terms, acted.terms);
        std::ostringstream os;
        os << "loop around " << vec_str(z0) << " acts nontrivially on "
           << probe_names[p];
        if (found)
          os << ": shift " << vec_str(low_key) << " off by " << rat_str(delta_c);
        chk.detail = os.str();
      }
    }
    rep.joints.push_back(chk);
    rep.consistent = rep.consistent && chk.ok;
  }
  return rep;
}

ScatteringDiagram split_s_walls(const ScatteringDiagram& dia) {
  ScatteringDiagram out{dia.seed, dia.cutoff, {}};
  for (const Wall& w : dia.walls) {
    if (!is_positive_integer(w.s))
      throw std::invalid_argument("split_s_walls: exponent " + rat_str(w.s) +
                                  " is not a positive integer");
    Wall unit = w;
    unit.s = 1;
    for (Int c = to_int(w.s); c > 0; --c) out.walls.push_back(unit);
  }
  std::sort(out.walls.begin(), out.walls.end());
  return out;
}

ScatteringDiagram merge_parallel_walls(const ScatteringDiagram& dia) {
  ScatteringDiagram out{dia.seed, dia.cutoff, {}};
  std::map<std::tuple<Cone, NVec, Int>, Rat> acc;
  for (const Wall& w : dia.walls) acc[{w.support, w.normal, w.t}] += w.s;
  for (const auto& [key, s] : acc) {
    if (s == 0) continue;
    out.walls.push_back(Wall{std::get<0>(key), std::get<1>(key), std::get<2>(key), s});
  }
  std::sort(out.walls.begin(), out.walls.end());
  return out;
}

namespace {

/* Check one chamber facet against the built diagram: the primitive positive
   normal n of the facet must carry the plain element Psi[n]^{delta(n)} when
   its degree is inside the cutoff. */
void verify_chamber(const ScatteringDiagram& ref, const Cone& chamber) {
  const FixedData& fd = ref.seed.data;
  const int r = fd.rank;
  if (chamber.dim != r)
    throw std::runtime_error("g_cones: chamber is not full-dimensional");
  for (const NVec& row : chamber.inequalities) {
    NVec v(r);
    bool pos = true, neg = true;
    for (int i = 0; i < r; ++i) {
      v[i] = row[i] * fd.delta[i];
      pos = pos && v[i] >= 0;
      neg = neg && v[i] <= 0;
    }
    if (!pos && !neg)
      throw std::runtime_error("g_cones: facet functional " + vec_str(v) +
                               " has mixed signs, so it is not a wall normal");
    NVec n = primitive_part(pos ? v : scale(v, -1));
    if (deg(n) > ref.cutoff) continue;

    Cone facet = cone_intersect(chamber, hyperplane_cone(r, to_mvec(row)));
    auto fgens = cone_generators(facet);
    std::vector<MVec> avoid;
    for (const Wall& w : ref.walls) {
      bool contains_span = true;
      for (const MVec& g : fgens)
        if (pairing(fd, w.normal, g) != 0) {
          contains_span = false;
          break;
        }
      if (!contains_span) avoid.push_back(pairing_mvec(fd, w.normal));
    }
    DilogProduct want{DilogFactor{n, delta_of(fd, n)}};
    bool done = false;
    for (unsigned seed = 0; seed < 32 && !done; ++seed) {
      MVec z0 = general_point_on(facet, avoid, seed);
      DilogProduct total;
      try {
        total = total_wall_element(ref, z0);
      } catch (const std::invalid_argument&) {
        continue;  // clipped another support's boundary; take a new point
      }
      if (!products_equivalent(fd, total, want, ref.cutoff))
        throw std::runtime_error("g_cones: chamber facet with normal " + vec_str(n) +
                                 " does not carry the plain dilogarithm element");
      done = true;
    }
    if (!done)
      throw std::runtime_error("g_cones: no general point found on a chamber facet");
  }
}

}  // namespace

std::vector<GCone> g_cones(const Seed& s, Int cutoff, int max_depth) {
  s.data.validate();
  const int r = s.data.rank;
  if (max_depth < 0) throw std::invalid_argument("g_cones: max_depth must be >= 0");

  ScatteringDiagram ref;
  if (cutoff >= 1) ref = build_csd(s, cutoff);

  struct Node {
    std::vector<int> word;
    std::vector<Seed> chain;  // chain[j] = seed after the first j letters
  };

  std::vector<GCone> out;
  std::set<Cone> seen;

  std::deque<Node> queue;
  queue.push_back(Node{{}, {s}});
  while (!queue.empty()) {
    Node nd = std::move(queue.front());
    queue.pop_front();

    /* The chamber of this mutation word: the positive orthant of the word's
       end seed, pulled back letter by letter. Each pullback re-coordinatizes
       and then undoes the shear on the upper half; the intermediate cones
       are chambers, hence never straddle the bending hyperplane, so mapping
       generators one by one is exact. */
    std::vector<MVec> gens;
    for (int i = 0; i < r; ++i) {
      MVec g(r, Rat(0));
      g[i] = 1;
      gens.push_back(g);
    }
    for (int j = (int)nd.word.size() - 1; j >= 0; --j) {
      const FixedData& fd = nd.chain[j].data;
      int k = nd.word[j];
      for (MVec& g : gens) g = t_k_inv(fd, k, coordinate_change_m(fd, k, g));
    }
    Cone c = cone_from_generators(r, gens);
    if (seen.insert(c).second) {
      if (cutoff >= 1) verify_chamber(ref, c);
      out.push_back(GCone{nd.word, c});
    }

    if ((int)nd.word.size() >= max_depth) continue;
    for (int k = 0; k < r; ++k) {
      if (!nd.word.empty() && nd.word.back() == k) continue;  // tree edge back up
      Node child;
      child.word = nd.word;
      child.word.push_back(k);
      child.chain = nd.chain;
      child.chain.push_back(mutate_seed(nd.chain.back(), k));
      queue.push_back(std::move(child));
    }
  }
  return out;
}

AdmissibleReport admissible_region_check(const ScatteringDiagram& dia) {
  const FixedData& fd = dia.seed.data;
  fd.validate();
  const int r = fd.rank;

  std::vector<MVec> coord_rows;
  for (int k = 0; k < r; ++k) {
    MVec row(r, Rat(0));
    row[k] = 1;
    coord_rows.push_back(row);
  }

  AdmissibleReport rep;
  for (size_t idx = 0; idx < dia.walls.size(); ++idx) {
    const Wall& w = dia.walls[idx];
    if (deg(w.normal) == 1) continue;       // the pivot hyperplanes are exempt
    if (wall_is_incoming(fd, w)) continue;  // and so is any other incoming wall

    AdmissibleCheck chk;
    chk.wall = (int)idx;
    /* A support with a non-unit normal is never contained in a coordinate
       hyperplane, so the general point has every z_k nonzero and the side of
       each bend is well-defined. */
    chk.sample = general_point_on(w.support, coord_rows, (unsigned)idx);
    chk.ok = true;
    for (int k = 0; k < r; ++k) {
      bool up = chk.sample[k] > 0;
      Rat v = -Rat(w.normal[k]);
      for (int j = 0; j < r; ++j) {
        Rat b = fd.b(k, j);
        Rat coef = up ? (b < 0 ? -b : Rat(0)) : (b > 0 ? b : Rat(0));
        if (coef != 0) v += coef * w.normal[j];
      }
      chk.shifted.push_back(v);
      if (v < 0) chk.ok = false;
    }
    rep.ok = rep.ok && chk.ok;
    rep.checks.push_back(chk);
  }
  return rep;
}

std::array<MVec, 2> rank2_admissible_rays(const FixedData& fd) {
  fd.validate();
  if (fd.rank != 2)
    throw std::invalid_argument("rank2_admissible_rays: rank must be 2");
  Int b12 = fd.b_int(0, 1), b21 = fd.b_int(1, 0);
  if (b12 >= 0 || b21 <= 0)
    throw std::invalid_argument("rank2_admissible_rays: need b_12 < 0 < b_21");
  return {MVec{Rat(-b12), Rat(-1)}, MVec{Rat(1), Rat(-b21)}};
}

}  // namespace scatterlab
