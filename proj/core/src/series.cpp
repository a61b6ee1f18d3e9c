#include "scatterlab/series.hpp"

#include <stdexcept>

namespace scatterlab {

namespace {

void check_shape(const FixedData& fd, const TruncatedSeries& f) {
  if ((int)f.base.m.size() != fd.rank || (int)f.base.n.size() != fd.rank)
    throw std::invalid_argument("series base has wrong rank");
}

}  // namespace

TruncatedSeries series_monomial(const FixedData& fd, const MTilde& base, Int cutoff) {
  TruncatedSeries s;
  s.base = base;
  s.cutoff = cutoff;
  s.terms[NVec(fd.rank, 0)] = 1;
  check_shape(fd, s);
  return s;
}

TruncatedSeries series_mul(const FixedData& fd, const TruncatedSeries& a,
                           const TruncatedSeries& b) {
  check_shape(fd, a);
  check_shape(fd, b);
  if (a.cutoff != b.cutoff) throw std::invalid_argument("series_mul: incompatible cutoffs");
  TruncatedSeries out;
  out.base = add(a.base, b.base);
  out.cutoff = a.cutoff;
  for (const auto& [sa, ca] : a.terms) {
    if (deg(sa) > out.cutoff) continue;
    for (const auto& [sb, cb] : b.terms) {
      NVec s = add(sa, sb);
      if (deg(s) > out.cutoff) continue;
      Rat v = ca * cb;
      if (v == 0) continue;
      auto [it, fresh] = out.terms.try_emplace(s, v);
      if (!fresh) {
        it->second += v;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  return out;
}

TruncatedSeries wall_action(const FixedData& fd, const NVec& n0, Int t, const Rat& s_exp,
                            int sign, const TruncatedSeries& f) {
  check_shape(fd, f);
  if (!in_n_plus(n0)) throw std::invalid_argument("wall_action: normal not in N+");
  if (content(n0) != 1) throw std::invalid_argument("wall_action: normal not primitive");
  if (t <= 0) throw std::invalid_argument("wall_action: t must be positive");
  if (!(s_exp > 0)) throw std::invalid_argument("wall_action: s must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("wall_action: sign must be +-1");

  Rat d0 = delta_of(fd, n0);
  // E(a) = sign * s_exp * ( <delta(n0) n0, base.m> + sum_i a_i {delta(n0) n0, e_i} )
  Rat e_base = 0;
  for (int i = 0; i < fd.rank; ++i) {
    if (n0[i] == 0 || f.base.m[i] == 0) continue;
    Rat q(n0[i], fd.delta[i]);
    q.canonicalize();
    e_base += q * f.base.m[i];
  }
  e_base *= d0;
  std::vector<Rat> e_step(fd.rank, Rat(0));
  for (int i = 0; i < fd.rank; ++i) {
    NVec ei(fd.rank, 0);
    ei[i] = 1;
    e_step[i] = d0 * skew(fd, n0, ei);
  }

  bool integral_input = is_integer(s_exp);
  for (const Rat& q : f.base.m) integral_input = integral_input && is_integer(q);

  NVec step = scale(n0, t);
  Int step_deg = deg(step);
  TruncatedSeries out;
  out.base = f.base;
  out.cutoff = f.cutoff;
  for (const auto& [a, coeff] : f.terms) {
    Rat e = e_base;
    for (int i = 0; i < fd.rank; ++i)
      if (a[i] != 0) e += a[i] * e_step[i];
    e *= s_exp;
    if (sign < 0) e = -e;
    if (integral_input && !is_integer(e))
      throw std::runtime_error("wall_action: non-integral exponent from integral data (" +
                               e.get_str() + "); wall record is inconsistent");
    Int room = (out.cutoff - deg(a)) / step_deg;
    NVec s = a;
    for (Int k = 0; k <= room; ++k) {
      Rat v = coeff * binom_general(e, k);
      if (v != 0) {
        auto [it, fresh] = out.terms.try_emplace(s, v);
        if (!fresh) {
          it->second += v;
          if (it->second == 0) out.terms.erase(it);
        }
      }
      if (k < room) s = add(s, step);
    }
  }
  return out;
}

TruncatedSeries dilog_action(const FixedData& fd, const DilogFactor& g, int sign,
                             const TruncatedSeries& f) {
  if (!in_n_plus(g.n)) throw std::invalid_argument("dilog_action: exponent vector not in N+");
  Int t = content(g.n);
  NVec n0 = primitive_part(g.n);
  // Psi[t n0]^c = Psi[t n0]^{s * delta(t n0)} with s = c * t / delta(n0)
  Rat s_exp = g.c * t / delta_of(fd, n0);
  return wall_action(fd, n0, t, s_exp, sign, f);
}

TruncatedSeries product_action(const FixedData& fd, const DilogProduct& c,
                               const TruncatedSeries& f, const std::vector<int>* signs) {
  if (signs && signs->size() != c.size())
    throw std::invalid_argument("product_action: signs size mismatch");
  TruncatedSeries out = f;
  for (size_t i = c.size(); i-- > 0;)
    out = dilog_action(fd, c[i], signs ? (*signs)[i] : 1, out);
  return out;
}

bool products_equivalent(const FixedData& fd, const DilogProduct& a, const DilogProduct& b,
                         Int cutoff) {
  for (int i = 0; i < fd.rank; ++i) {
    MTilde fi{MVec(fd.rank, Rat(0)), NVec(fd.rank, 0)};
    fi.m[i] = 1;
    TruncatedSeries probe = series_monomial(fd, fi, cutoff);
    if (product_action(fd, a, probe) != product_action(fd, b, probe)) return false;
    MTilde ei{MVec(fd.rank, Rat(0)), NVec(fd.rank, 0)};
    ei.n[i] = 1;
    probe = series_monomial(fd, ei, cutoff);
    if (product_action(fd, a, probe) != product_action(fd, b, probe)) return false;
  }
  return true;
}

TruncatedSeries x_derivation(const FixedData& fd, const NVec& n, const TruncatedSeries& f) {
  check_shape(fd, f);
  if (!in_n_plus(n)) throw std::invalid_argument("x_derivation: n not in N+");
  TruncatedSeries out;
  out.base = f.base;
  out.cutoff = f.cutoff;
  Rat e_base = pairing(fd, n, f.base.m);
  for (const auto& [a, coeff] : f.terms) {
    NVec s = add(a, n);
    if (deg(s) > out.cutoff) continue;
    Rat e = e_base;
    for (int i = 0; i < fd.rank; ++i) {
      if (a[i] == 0) continue;
      NVec ei(fd.rank, 0);
      ei[i] = 1;
      e += a[i] * skew(fd, n, ei);
    }
    Rat v = coeff * e;
    if (v == 0) continue;
    auto [it, fresh] = out.terms.try_emplace(s, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

TruncatedSeries exp_derivations(const FixedData& fd,
                                const std::vector<std::pair<NVec, Rat>>& gens,
                                const TruncatedSeries& f) {
  // exp(D) f = sum_k D^k f / k!; D raises shift degree, so it nilpotent here
  TruncatedSeries acc = f;
  TruncatedSeries power = f;
  Rat fact = 1;
  for (Int k = 1; k <= f.cutoff; ++k) {
    TruncatedSeries next;
    next.base = power.base;
    next.cutoff = power.cutoff;
    for (const auto& [n, c] : gens) {
      TruncatedSeries term = x_derivation(fd, n, power);
      for (auto& [s, v] : term.terms) {
        Rat w = v * c;
        if (w == 0) continue;
        auto [it, fresh] = next.terms.try_emplace(s, w);
        if (!fresh) {
          it->second += w;
          if (it->second == 0) next.terms.erase(it);
        }
      }
    }
    power = next;
    fact *= k;
    if (power.terms.empty()) break;
    for (const auto& [s, v] : power.terms) {
      Rat w = v / fact;
      auto [it, fresh] = acc.terms.try_emplace(s, w);
      if (!fresh) {
        it->second += w;
        if (it->second == 0) acc.terms.erase(it);
      }
    }
  }
  return acc;
}

YSeries y_monomial(const FixedData& fd, const NVec& n, Int cutoff) {
  for (Int x : n)
    if (x < 0) throw std::invalid_argument("y_monomial: exponent outside the monoid");
  YSeries s;
  s.cutoff = cutoff;
  if (deg(n) <= cutoff) s.terms[n] = 1;
  (void)fd;
  return s;
}

YSeries y_derivation(const FixedData& fd, const NVec& n, const YSeries& g) {
  if (!in_n_plus(n)) throw std::invalid_argument("y_derivation: n not in N+");
  YSeries out;
  out.cutoff = g.cutoff;
  for (const auto& [np, coeff] : g.terms) {
    NVec s = add(np, n);
    if (deg(s) > out.cutoff) continue;
    Rat v = coeff * skew(fd, n, np);
    if (v == 0) continue;
    auto [it, fresh] = out.terms.try_emplace(s, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

}  // namespace scatterlab
