#pragma once

#include <map>

#include "scatterlab/dilog.hpp"
#include "scatterlab/lattice.hpp"

namespace scatterlab {

/* Element of the (completed) monomial algebra truncated in total shift degree:
       x^{base} * sum_a  coeff_a * x^{a_1 p1*(e_1) + ... + a_r p1*(e_r)},
   keyed by the shift vector a >= 0 with sum(a) <= cutoff. Because x^{p1*(n)}
   has shift vector n, shift degree equals the grading degree of the acting
   group, so equality of truncated actions is equality modulo degree > cutoff. */
struct TruncatedSeries {
  MTilde base;
  Int cutoff = 0;
  std::map<NVec, Rat> terms;

  bool operator==(const TruncatedSeries& o) const = default;
};

TruncatedSeries series_monomial(const FixedData& fd, const MTilde& base, Int cutoff);
TruncatedSeries series_mul(const FixedData& fd, const TruncatedSeries& a,
                           const TruncatedSeries& b);

/* Action of the wall element Psi[t*n0]^{sign * s_exp * delta(t*n0)} on f:
   every monomial x^{mt} is scaled by (1 + x^{p1*(t n0)})^{sign * s_exp *
   <delta(n0) n0, mt>_1}. n0 must be primitive and in N+. When s_exp and the
   base are integral the exponent must come out integral; a violation means the
   wall data is inconsistent and raises. */
TruncatedSeries wall_action(const FixedData& fd, const NVec& n0, Int t, const Rat& s_exp,
                            int sign, const TruncatedSeries& f);

// action of Psi[n]^c (n possibly non-primitive) with c = s_exp * delta(n)
TruncatedSeries dilog_action(const FixedData& fd, const DilogFactor& g, int sign,
                             const TruncatedSeries& f);

/* apply a whole product; factors act right to left (the leftmost factor is
   applied last), with per-factor signs if given */
TruncatedSeries product_action(const FixedData& fd, const DilogProduct& c,
                               const TruncatedSeries& f,
                               const std::vector<int>* signs = nullptr);

/* Equality of the two products as automorphisms modulo degree > cutoff,
   decided by acting on the 2*rank basis monomials x^{f_i} and x^{e_i}. */
bool products_equivalent(const FixedData& fd, const DilogProduct& a, const DilogProduct& b,
                         Int cutoff);

// derivation X_n on the x-monomial algebra: X_n(x^{mt}) = <n, mt>_1 x^{mt + p1*(n)}
TruncatedSeries x_derivation(const FixedData& fd, const NVec& n, const TruncatedSeries& f);

// exp of a finite sum of scaled derivations sum_j c_j X_{n_j} (all n_j in N+)
TruncatedSeries exp_derivations(const FixedData& fd,
                                const std::vector<std::pair<NVec, Rat>>& gens,
                                const TruncatedSeries& f);

/* y-monomial series over the degree monoid: terms y^{n'} with n' >= 0,
   truncated the same way. The derivation picture of the same Lie algebra:
   Xt_n(y^{n'}) = {n, n'} y^{n + n'}. */
struct YSeries {
  Int cutoff = 0;
  std::map<NVec, Rat> terms;

  bool operator==(const YSeries& o) const = default;
};

YSeries y_monomial(const FixedData& fd, const NVec& n, Int cutoff);
YSeries y_derivation(const FixedData& fd, const NVec& n, const YSeries& g);

}  // namespace scatterlab
