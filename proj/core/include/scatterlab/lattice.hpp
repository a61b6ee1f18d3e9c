#pragma once

#include <string>
#include <vector>

#include "scatterlab/rational.hpp"

namespace scatterlab {

/* A point of the extended dual lattice: an M-part (f-basis coordinates) plus an
   N-part (e-basis coordinates). Wall-crossing maps act on monomials indexed by
   these. */
struct MTilde {
  MVec m;
  NVec n;

  bool operator==(const MTilde& o) const = default;
  bool operator<(const MTilde& o) const {
    if (m != o.m) return m < o.m;
    return n < o.n;
  }
};

/* Rank, skew form on N (matrix of {e_i, e_j}) and the positive integers d_i
   scaling the sublattice N' = ⊕ Z d_i e_i. The exchange matrix entries are
   b_ij = d_i * omega_ij and must be integers. */
struct FixedData {
  int rank = 0;
  std::vector<std::vector<Rat>> omega;
  std::vector<Int> delta;

  void validate() const;
  Rat b(int i, int j) const { return delta[i] * omega[i][j]; }
  Int b_int(int i, int j) const { return to_int(b(i, j)); }
};

/* A seed is fixed data plus a provenance label; mutate_seed appends the
   direction to the label so diagrams remember their mutation word. */
struct Seed {
  FixedData data;
  std::string id;
};

FixedData from_exchange_matrix(const std::vector<std::vector<Int>>& B,
                               const std::vector<Int>& delta);

// <n, z> = sum_i n_i z_i / d_i  (z in f-coordinates)
Rat pairing(const FixedData& fd, const NVec& n, const MVec& z);
// {n, n'} = sum_ij n_i omega_ij n'_j
Rat skew(const FixedData& fd, const NVec& n, const NVec& nprime);
// p*(n) = B n in f-coordinates; satisfies <n', p*(n)> = {n', n}
MVec p_star(const FixedData& fd, const NVec& n);
// <n, (m, n')>_1 = <n, m>: the extended pairing only sees the M-part
Rat pairing1(const FixedData& fd, const NVec& n, const MTilde& mt);
// p1*(n) = (p*(n), n), an injective lift of p*
MTilde p1_star(const FixedData& fd, const NVec& n);

Int deg(const NVec& n);
bool in_n_plus(const NVec& n);     // nonzero with all coordinates >= 0
bool is_zero(const NVec& n);
Int content(const NVec& n);        // gcd of coordinates (n != 0)
NVec primitive_part(const NVec& n);

/* The normalization factor of n != 0: the smallest positive rational d with
   d*n in N'. Equals 1/t * delta(n0) for n = t*n0 with n0 primitive. */
Rat delta_of(const FixedData& fd, const NVec& n);

NVec add(const NVec& a, const NVec& b);
NVec sub(const NVec& a, const NVec& b);
NVec scale(const NVec& a, Int c);
MVec add(const MVec& a, const MVec& b);
MVec sub(const MVec& a, const MVec& b);
MVec scale(const MVec& a, const Rat& c);
MTilde add(const MTilde& a, const MTilde& b);

/* Seed mutation in direction k (0-based): e'_k = -e_k,
   e'_i = e_i + [b_ki]_+ e_k. The form matrix transforms by conjugation with
   the basis-change matrix; delta is unchanged. */
Seed mutate_seed(const Seed& s, int k);

/* Basis-change matrix A for mutation in direction k: new coordinates of n are
   A * (old coordinates). A is an involution. */
std::vector<std::vector<Int>> mutation_matrix_n(const FixedData& fd, int k);
NVec coordinate_change(const FixedData& fd, int k, const NVec& n);
// f-coordinate change of the same mutation (column-k variant, also an involution)
MVec coordinate_change_m(const FixedData& fd, int k, const MVec& z);

// S_k(z) = z + <d_k e_k, z> p*(e_k); piecewise-linear T_k applies S_k on z_k >= 0 only
MVec s_k(const FixedData& fd, int k, const MVec& z);
MVec s_k_inv(const FixedData& fd, int k, const MVec& z);
NVec s_k_star(const FixedData& fd, int k, const NVec& n);
NVec s_k_star_inv(const FixedData& fd, int k, const NVec& n);
MVec t_k(const FixedData& fd, int k, const MVec& z);
MVec t_k_inv(const FixedData& fd, int k, const MVec& z);
// extended shear on exponents: mt + <d_k e_k, mt>_1 p1*(e_k) (t variant on m_k >= 0 only)
MTilde s_k_tilde(const FixedData& fd, int k, const MTilde& mt);
MTilde t_k_tilde(const FixedData& fd, int k, const MTilde& mt);

/* Rescaled fixed data (lambda * omega, delta / lambda); requires every
   delta_i / lambda to be a positive integer. Normalized dilogarithm exponents
   are invariant under this change. */
FixedData rescale(const FixedData& fd, const Rat& lambda);

std::string vec_str(const NVec& v);
std::string vec_str(const MVec& v);

}  // namespace scatterlab
