#include "scatterlab/theta.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace scatterlab {

namespace {

Rat row_dot(const NVec& row, const MVec& z) {
  Rat v = 0;
  for (size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) v += row[i] * z[i];
  return v;
}

bool zero_mvec(const MVec& z) {
  for (const Rat& c : z)
    if (c != 0) return false;
  return true;
}

MVec ray_at(const MVec& p, const MVec& dir, const Rat& u) {
  MVec z = p;
  for (size_t i = 0; i < z.size(); ++i) z[i] += u * dir[i];
  return z;
}

bool line_less(const BrokenLine& a, const BrokenLine& b) {
  const MTilde& ea = a.segments.back().exponent;
  const MTilde& eb = b.segments.back().exponent;
  if (!(ea == eb)) return ea < eb;
  if (a.bends.size() != b.bends.size()) return a.bends.size() < b.bends.size();
  for (size_t j = 0; j < a.bends.size(); ++j) {
    if (a.bends[j].normal != b.bends[j].normal) return a.bends[j].normal < b.bends[j].normal;
    if (a.bends[j].power != b.bends[j].power) return a.bends[j].power < b.bends[j].power;
    if (a.bends[j].point != b.bends[j].point) return a.bends[j].point < b.bends[j].point;
  }
  return false;
}

/* Backward walker. The walls of degree <= cutoff are frozen once; every
   candidate final exponent m0 + p1*(v), deg(v) <= cutoff, starts its own
   depth-first walk from the endpoint toward infinity. */
class LineEnumerator {
 public:
  LineEnumerator(const ScatteringDiagram& dia, const MTilde& m0, const MVec& q, Int cutoff)
      : fd_(dia.seed.data), m0_(m0), q_(q), cutoff_(cutoff) {
    for (const Wall& w : dia.walls)
      if (wall_degree(w) <= cutoff) walls_.push_back(&w);
  }

  std::vector<BrokenLine> run() {
    for (const Wall* w : walls_)
      if (cone_contains(w->support, q_))
        fail("the endpoint lies on wall " + wall_str(fd_, *w));
    NVec v(fd_.rank, 0);
    targets(v, 0, 0);
    std::sort(lines_.begin(), lines_.end(), line_less);
    return std::move(lines_);
  }

 private:
  struct Event {
    Rat u;
    MVec point;
    NVec normal;
    std::vector<int> group;
  };

  void targets(NVec& v, int i, Int used) {
    if (i == fd_.rank) {
      trace(q_, add(m0_, p1_star(fd_, v)), v);
      return;
    }
    for (Int a = 0; used + a <= cutoff_; ++a) {
      v[i] = a;
      targets(v, i + 1, used + a);
    }
    v[i] = 0;
  }

  /* Walk backward from p carrying the exponent cur = m0 + p1*(vrem); the
     segment runs along +cur.m. At the next crossing the line either passes (a
     crossing without a bend) or sheds a positive multiple of the group normal
     from vrem; a branch completes when vrem is empty and the ray escapes. */
  void trace(const MVec& p, const MTilde& cur, const NVec& vrem) {
    std::optional<Event> ev = next_event(p, cur.m);
    if (!ev) {
      if (is_zero(vrem)) finish();
      return;
    }
    trace(ev->point, cur, vrem);

    Int amax = shed_bound(ev->normal, vrem);
    if (amax == 0) return;
    Rat q = delta_of(fd_, ev->normal) * pairing(fd_, ev->normal, cur.m);
    if (q < 0) q = -q;
    std::vector<Rat> c = group_expansion(ev->group, q, amax);
    for (Int a = 1; a <= amax; ++a) {
      if (c[a] == 0) continue;
      chain_.push_back(Bend{ev->point, ev->normal, a, c[a]});
      trace(ev->point, add(cur, p1_star(fd_, scale(ev->normal, -a))),
            sub(vrem, scale(ev->normal, a)));
      chain_.pop_back();
    }
  }

  // largest a with a * n0 <= vrem coordinatewise
  Int shed_bound(const NVec& n0, const NVec& vrem) const {
    Int amax = cutoff_;
    for (int i = 0; i < fd_.rank; ++i)
      if (n0[i] > 0) amax = std::min(amax, vrem[i] / n0[i]);
    return amax;
  }

  /* y^j coefficients, j <= amax, of the product over the group's records of
     (1 + y^t)^{s q}; fractional exponents expand with the generalized
     binomial series. q is the constant |<delta(n0) n0, cur>_1| of the
     crossing; it survives every shed at this wall because the shift p1*(n0)
     pairs to zero with n0. */
  std::vector<Rat> group_expansion(const std::vector<int>& group, const Rat& q, Int amax) const {
    std::vector<Rat> acc(amax + 1, Rat(0));
    acc[0] = 1;
    for (int idx : group) {
      const Wall& w = *walls_[idx];
      Rat e = w.s * q;
      std::vector<Rat> nxt(amax + 1, Rat(0));
      for (Int i = 0; i <= amax; ++i) {
        if (acc[i] == 0) continue;
        for (Int j = 0; i + j * w.t <= amax; ++j) nxt[i + j * w.t] += acc[i] * binom_general(e, j);
      }
      acc = std::move(nxt);
    }
    return acc;
  }

  void finish() {
    BrokenLine line;
    line.endpoint = q_;
    line.bends.assign(chain_.rbegin(), chain_.rend());
    Segment seg{Rat(1), m0_};
    line.segments.push_back(seg);
    for (const Bend& b : line.bends) {
      seg.coeff *= b.coeff;
      seg.exponent = add(seg.exponent, p1_star(fd_, scale(b.normal, b.power)));
      line.segments.push_back(seg);
    }
    lines_.push_back(std::move(line));
  }

  /* Earliest contact of the open ray p + u * dir, u > 0, with the walls.
     Transversal crossings through relative interiors are grouped by the
     common crossing point; everything else (a boundary touch, a segment
     inside a wall's hyperplane grazing its support, two independent normals
     at one point) is a general position failure the moment the line reaches
     it no later than the first clean crossing. */
  std::optional<Event> next_event(const MVec& p, const MVec& dir) {
    if (zero_mvec(dir)) return std::nullopt;
    std::optional<Rat> best;
    std::vector<int> group;
    std::optional<Rat> sing_u;
    std::string sing_what;
    auto note_sing = [&](const Rat& u, std::string what) {
      if (!sing_u || u < *sing_u) {
        sing_u = u;
        sing_what = std::move(what);
      }
    };

    for (int idx = 0; idx < (int)walls_.size(); ++idx) {
      const Cone& s = walls_[idx]->support;
      bool off = false, pinned = false;
      Rat upin;
      for (const NVec& e : s.equalities) {
        Rat a = row_dot(e, p), b = row_dot(e, dir);
        if (b == 0) {
          if (a != 0) {
            off = true;
            break;
          }
          continue;
        }
        Rat u = -a / b;
        if (pinned && u != upin) {
          off = true;
          break;
        }
        pinned = true;
        upin = u;
      }
      if (off) continue;

      if (pinned) {
        if (!(upin > 0)) continue;
        MVec z = ray_at(p, dir, upin);
        int side = 1;
        for (const NVec& a : s.inequalities) {
          Rat v = row_dot(a, z);
          if (v < 0) {
            side = -1;
            break;
          }
          if (v == 0) side = 0;
        }
        if (side < 0) continue;
        if (side == 0) {
          note_sing(upin, "a candidate line touches the boundary of wall " +
                              wall_str(fd_, *walls_[idx]));
          continue;
        }
        if (!best || upin < *best) {
          best = upin;
          group.assign(1, idx);
        } else if (upin == *best) {
          group.push_back(idx);
        }
      } else {
        // ray inside the wall's hyperplane: any contact ahead is non-generic
        std::optional<Rat> lo, hi;
        bool empty = false;
        for (const NVec& a : s.inequalities) {
          Rat c0 = row_dot(a, p), c1 = row_dot(a, dir);
          if (c1 == 0) {
            if (c0 < 0) {
              empty = true;
              break;
            }
            continue;
          }
          Rat ucut = -c0 / c1;
          if (c1 > 0) {
            if (!lo || ucut > *lo) lo = ucut;
          } else {
            if (!hi || ucut < *hi) hi = ucut;
          }
        }
        if (empty) continue;
        if (lo && hi && *lo > *hi) continue;
        if (hi && !(*hi > 0)) continue;
        Rat touch = (lo && *lo > 0) ? *lo : Rat(0);
        note_sing(touch, "a candidate line runs inside the hyperplane of wall " +
                             wall_str(fd_, *walls_[idx]) + " and meets its support");
      }
    }

    if (sing_u && (!best || *sing_u <= *best)) fail(sing_what);
    if (!best) return std::nullopt;

    Event ev;
    ev.u = *best;
    ev.point = ray_at(p, dir, *best);
    ev.normal = walls_[group[0]]->normal;
    for (int idx : group)
      if (walls_[idx]->normal != ev.normal)
        fail("a candidate line passes through a point shared by walls with independent normals (" +
             wall_str(fd_, *walls_[group[0]]) + " and " + wall_str(fd_, *walls_[idx]) + ")");
    ev.group = std::move(group);
    return ev;
  }

  /* General position failed somewhere along a candidate line. Suggest a
     deterministic dyadic nudge of the endpoint that at least clears every
     wall; the rerun certifies the rest. */
  [[noreturn]] void fail(const std::string& what) const {
    for (int k = 4; k <= 40; ++k) {
      MVec cand = q_;
      for (int i = 0; i < fd_.rank; ++i) cand[i] += Rat(1, 1L << std::min<long>(k + i, 60));
      bool clear = true;
      for (const Wall* w : walls_)
        if (cone_contains(w->support, cand)) {
          clear = false;
          break;
        }
      if (clear)
        throw std::invalid_argument("broken_lines: " + what + "; retry with an endpoint like " +
                                    vec_str(cand));
    }
    throw std::invalid_argument("broken_lines: " + what);
  }

  const FixedData& fd_;
  MTilde m0_;
  MVec q_;
  Int cutoff_;
  std::vector<const Wall*> walls_;
  std::vector<Bend> chain_;
  std::vector<BrokenLine> lines_;
};

std::string series_diff(const TruncatedSeries& got, const TruncatedSeries& want) {
  std::set<NVec> keys;
  for (const auto& [k, v] : got.terms) keys.insert(k);
  for (const auto& [k, v] : want.terms) keys.insert(k);
  std::string out;
  for (const NVec& k : keys) {
    auto ig = got.terms.find(k);
    auto iw = want.terms.find(k);
    Rat cg = ig == got.terms.end() ? Rat(0) : ig->second;
    Rat cw = iw == want.terms.end() ? Rat(0) : iw->second;
    if (cg == cw) continue;
    out += "shift " + vec_str(k) + ": " + cg.get_str() + " vs " + cw.get_str() + "; ";
  }
  return out;
}

void validate_point_args(const FixedData& fd, const MTilde& m0, const MVec& q,
                         const char* who) {
  if ((int)m0.m.size() != fd.rank || (int)m0.n.size() != fd.rank || (int)q.size() != fd.rank)
    throw std::invalid_argument(std::string(who) + ": rank mismatch");
  for (const Rat& c : m0.m)
    if (!is_integer(c))
      throw std::invalid_argument(std::string(who) + ": initial exponent must be integral");
}

/* Wall crossings along a polyline from a to b, inserting a fresh general
   middle waypoint when the straight segment clips a joint or a support
   boundary. */
SignedProduct product_between(const ScatteringDiagram& dia, const MVec& a, const MVec& b,
                              Int cutoff) {
  const FixedData& fd = dia.seed.data;
  std::vector<MVec> avoid;
  std::set<NVec> seen;
  for (const Wall& w : dia.walls)
    if (wall_degree(w) <= cutoff && seen.insert(w.normal).second)
      avoid.push_back(pairing_mvec(fd, w.normal));
  try {
    return path_ordered_product(dia, {a, b}, cutoff);
  } catch (const std::invalid_argument&) {
  }
  Cone everything = cone_from_constraints(fd.rank, {}, {});
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    try {
      MVec mid = general_point_on(everything, avoid, attempt);
      return path_ordered_product(dia, {a, mid, b}, cutoff);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("no admissible polyline between the given endpoints");
}

}  // namespace

std::vector<BrokenLine> broken_lines(const ScatteringDiagram& dia, const MTilde& m0,
                                     const MVec& q, Int cutoff) {
  const FixedData& fd = dia.seed.data;
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  if (L < 0) throw std::invalid_argument("broken_lines: negative cutoff");
  validate_point_args(fd, m0, q, "broken_lines");
  if (zero_mvec(m0.m) && is_zero(m0.n))
    throw std::invalid_argument("broken_lines: zero initial exponent");
  return LineEnumerator(dia, m0, q, L).run();
}

TruncatedSeries theta(const ScatteringDiagram& dia, const MTilde& m0, const MVec& q,
                      Int cutoff) {
  const FixedData& fd = dia.seed.data;
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  if (zero_mvec(m0.m) && is_zero(m0.n)) return series_monomial(fd, m0, L);
  TruncatedSeries out;
  out.base = m0;
  out.cutoff = L;
  for (const BrokenLine& g : broken_lines(dia, m0, q, L)) {
    const Segment& last = g.segments.back();
    NVec key = sub(last.exponent.n, m0.n);
    auto [it, fresh] = out.terms.try_emplace(key, last.coeff);
    if (!fresh) {
      it->second += last.coeff;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

TruncatedSeries theta_via_path(const ScatteringDiagram& dia, const MTilde& m0,
                               const Cone& source, const MVec& q, Int cutoff) {
  const FixedData& fd = dia.seed.data;
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  validate_point_args(fd, m0, q, "theta_via_path");
  if (source.ambient != fd.rank || cone_dim(source) != fd.rank)
    throw std::invalid_argument("theta_via_path: source cone is not full-dimensional");
  if (!cone_contains(source, m0.m))
    throw std::invalid_argument("theta_via_path: initial direction is outside the source cone");
  for (const Rat& c : q)
    if (!(c > 0))
      throw std::invalid_argument(
          "theta_via_path: endpoint must be interior to the all-positive chamber");

  std::vector<MVec> avoid;
  std::set<NVec> seen;
  for (const Wall& w : dia.walls)
    if (wall_degree(w) <= L && seen.insert(w.normal).second)
      avoid.push_back(pairing_mvec(fd, w.normal));

  TruncatedSeries base = series_monomial(fd, m0, L);
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    MVec start = general_point_on(source, avoid, attempt);
    try {
      SignedProduct sp = path_ordered_product(dia, {start, q}, L);
      return product_action(fd, sp.factors, base, &sp.signs);
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("theta_via_path: no admissible polyline found");
}

bool check_theta_transitivity(const ScatteringDiagram& dia, const MTilde& m0, const MVec& qa,
                              const MVec& qb, Int cutoff, std::string* diff) {
  const FixedData& fd = dia.seed.data;
  Int L = cutoff > 0 ? cutoff : dia.cutoff;
  TruncatedSeries ta = theta(dia, m0, qa, L);
  TruncatedSeries tb = theta(dia, m0, qb, L);
  SignedProduct sp = product_between(dia, qa, qb, L);
  TruncatedSeries moved = product_action(fd, sp.factors, ta, &sp.signs);
  if (moved == tb) return true;
  if (diff) *diff = series_diff(moved, tb);
  return false;
}

bool check_theta_mutation(const Seed& s, int k, const MTilde& m0, const MVec& q, Int cutoff,
                          std::string* diff) {
  const FixedData& fd = s.data;
  if (k < 0 || k >= fd.rank) throw std::invalid_argument("check_theta_mutation: bad direction");
  if (cutoff < 1) throw std::invalid_argument("check_theta_mutation: cutoff must be >= 1");
  validate_point_args(fd, m0, q, "check_theta_mutation");
  if (q[k] == 0)
    throw std::invalid_argument("check_theta_mutation: endpoint on the mutation hyperplane");

  ScatteringDiagram da = build_csd(s, cutoff);
  Seed s2 = mutate_seed(s, k);
  ScatteringDiagram db = build_csd(s2, cutoff);
  const FixedData& fd2 = s2.data;

  bool plus = q[k] > 0;
  auto recoord = [&](const MTilde& mt) {
    return MTilde{coordinate_change_m(fd, k, mt.m), coordinate_change(fd, k, mt.n)};
  };
  NVec ek(fd.rank, 0);
  ek[k] = 1;
  auto shear_inv = [&](const MTilde& mt) {
    return add(mt, p1_star(fd, scale(ek, -to_int(mt.m[k]))));
  };

  TruncatedSeries ta = theta(da, m0, q, cutoff);
  MTilde m0b = recoord(t_k_tilde(fd, k, m0));
  MVec qb = coordinate_change_m(fd, k, t_k(fd, k, q));
  TruncatedSeries tb = theta(db, m0b, qb, cutoff);

  /* The shear does not preserve shift degree, so each side only sees the
     monomials of degree <= cutoff in its own grading; compare the monomials
     visible in both. */
  std::map<MTilde, Rat> expect, actual;
  for (const auto& [a, c] : ta.terms) {
    MTilde mt = add(m0, p1_star(fd, a));
    MTilde image = recoord(plus ? s_k_tilde(fd, k, mt) : mt);
    if (deg(sub(image.n, m0b.n)) > cutoff) continue;
    expect[image] += c;
  }
  for (const auto& [a, c] : tb.terms) {
    MTilde image = add(m0b, p1_star(fd2, a));
    MTilde back = recoord(image);
    if (plus) back = shear_inv(back);
    if (deg(sub(back.n, m0.n)) > cutoff) continue;
    actual[image] += c;
  }
  if (expect == actual) return true;
  if (diff) {
    std::set<MTilde> keys;
    for (const auto& [mt, c] : expect) keys.insert(mt);
    for (const auto& [mt, c] : actual) keys.insert(mt);
    std::string out;
    for (const MTilde& mt : keys) {
      auto ie = expect.find(mt);
      auto ia = actual.find(mt);
      Rat ce = ie == expect.end() ? Rat(0) : ie->second;
      Rat ca = ia == actual.end() ? Rat(0) : ia->second;
      if (ce == ca) continue;
      out += "m=" + vec_str(mt.m) + " n=" + vec_str(mt.n) + ": expected " + ce.get_str() +
             ", got " + ca.get_str() + "; ";
    }
    *diff = out;
  }
  return false;
}

}  // namespace scatterlab
