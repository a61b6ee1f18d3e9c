#include "scatterlab/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace scatterlab {

void FixedData::validate() const {
  if (rank <= 0) throw std::invalid_argument("rank must be positive");
  if ((int)omega.size() != rank || (int)delta.size() != rank)
    throw std::invalid_argument("omega/delta size mismatch with rank");
  for (int i = 0; i < rank; ++i) {
    if ((int)omega[i].size() != rank) throw std::invalid_argument("omega not square");
    if (delta[i] <= 0) throw std::invalid_argument("delta entries must be positive");
  }
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (omega[i][j] != -omega[j][i]) throw std::invalid_argument("omega not skew-symmetric");
      if (!is_integer(delta[i] * omega[i][j]))
        throw std::invalid_argument("exchange matrix entry b_ij = d_i*omega_ij not integral");
    }
}

FixedData from_exchange_matrix(const std::vector<std::vector<Int>>& B,
                               const std::vector<Int>& delta) {
  FixedData fd;
  fd.rank = (int)B.size();
  fd.delta = delta;
  fd.omega.assign(fd.rank, std::vector<Rat>(fd.rank, 0));
  if ((int)delta.size() != fd.rank) throw std::invalid_argument("delta size mismatch");
  for (int i = 0; i < fd.rank; ++i) {
    if ((int)B[i].size() != fd.rank) throw std::invalid_argument("B not square");
    if (delta[i] <= 0) throw std::invalid_argument("delta entries must be positive");
    for (int j = 0; j < fd.rank; ++j) {
      fd.omega[i][j] = Rat(B[i][j], delta[i]);
      fd.omega[i][j].canonicalize();
    }
  }
  fd.validate();  // rejects B that is not skew-symmetrizable by this delta
  return fd;
}

Rat pairing(const FixedData& fd, const NVec& n, const MVec& z) {
  Rat r = 0;
  for (int i = 0; i < fd.rank; ++i) {
    if (n[i] == 0) continue;
    Rat q(n[i], fd.delta[i]);
    q.canonicalize();
    r += q * z[i];
  }
  return r;
}

Rat skew(const FixedData& fd, const NVec& n, const NVec& nprime) {
  Rat r = 0;
  for (int i = 0; i < fd.rank; ++i) {
    if (n[i] == 0) continue;
    for (int j = 0; j < fd.rank; ++j)
      if (nprime[j] != 0) r += n[i] * fd.omega[i][j] * nprime[j];
  }
  return r;
}

MVec p_star(const FixedData& fd, const NVec& n) {
  MVec z(fd.rank, Rat(0));
  for (int i = 0; i < fd.rank; ++i)
    for (int j = 0; j < fd.rank; ++j)
      if (n[j] != 0) z[i] += fd.b(i, j) * n[j];
  return z;
}

Rat pairing1(const FixedData& fd, const NVec& n, const MTilde& mt) {
  return pairing(fd, n, mt.m);
}

MTilde p1_star(const FixedData& fd, const NVec& n) { return MTilde{p_star(fd, n), n}; }

Int deg(const NVec& n) {
  Int s = 0;
  for (Int x : n) s += x;
  return s;
}

bool is_zero(const NVec& n) {
  return std::all_of(n.begin(), n.end(), [](Int x) { return x == 0; });
}

bool in_n_plus(const NVec& n) {
  bool nonzero = false;
  for (Int x : n) {
    if (x < 0) return false;
    if (x > 0) nonzero = true;
  }
  return nonzero;
}

Int content(const NVec& n) {
  Int g = 0;
  for (Int x : n) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw std::invalid_argument("content of zero vector");
  return g;
}

NVec primitive_part(const NVec& n) {
  Int g = content(n);
  NVec r = n;
  for (Int& x : r) x /= g;
  return r;
}

Rat delta_of(const FixedData& fd, const NVec& n) {
  if (is_zero(n)) throw std::invalid_argument("delta_of: zero vector");
  // smallest positive d with d*n_i divisible by d_i for all i
  Rat d(0);
  for (int i = 0; i < fd.rank; ++i) {
    if (n[i] == 0) continue;
    Rat need(fd.delta[i], n[i] < 0 ? -n[i] : n[i]);
    need.canonicalize();
    d = (d == 0) ? need : rat_lcm(d, need);
  }
  return d;
}

NVec add(const NVec& a, const NVec& b) {
  NVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
NVec sub(const NVec& a, const NVec& b) {
  NVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
NVec scale(const NVec& a, Int c) {
  NVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}
MVec add(const MVec& a, const MVec& b) {
  MVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
MVec sub(const MVec& a, const MVec& b) {
  MVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
MVec scale(const MVec& a, const Rat& c) {
  MVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}
MTilde add(const MTilde& a, const MTilde& b) { return {add(a.m, b.m), add(a.n, b.n)}; }

std::vector<std::vector<Int>> mutation_matrix_n(const FixedData& fd, int k) {
  std::vector<std::vector<Int>> A(fd.rank, std::vector<Int>(fd.rank, 0));
  for (int i = 0; i < fd.rank; ++i) A[i][i] = 1;
  A[k][k] = -1;
  for (int j = 0; j < fd.rank; ++j)
    if (j != k) A[k][j] = std::max<Int>(fd.b_int(k, j), 0);
  return A;
}

NVec coordinate_change(const FixedData& fd, int k, const NVec& n) {
  auto A = mutation_matrix_n(fd, k);
  NVec r(fd.rank, 0);
  for (int i = 0; i < fd.rank; ++i)
    for (int j = 0; j < fd.rank; ++j) r[i] += A[i][j] * n[j];
  return r;
}

MVec coordinate_change_m(const FixedData& fd, int k, const MVec& z) {
  // column-k analogue: w'_i = w_i + [-b_ik]_+ w_k (i != k), w'_k = -w_k
  MVec r = z;
  for (int i = 0; i < fd.rank; ++i)
    if (i != k) r[i] = z[i] + std::max<Int>(-fd.b_int(i, k), 0) * z[k];
  r[k] = -z[k];
  return r;
}

Seed mutate_seed(const Seed& s, int k) {
  const FixedData& fd = s.data;
  if (k < 0 || k >= fd.rank) throw std::invalid_argument("mutation direction out of range");
  auto A = mutation_matrix_n(fd, k);
  FixedData out = fd;
  // omega'_{ij} = {e'_i, e'_j} = sum_{ab} A_ia A_jb omega_ab ... with e' = rows of A
  // Coordinates transform by A, bases transform by the transpose relation; here we
  // conjugate directly: omega'(i,j) = omega(A^T applied to basis): e'_i = sum_a C_ai e_a
  // with C = A^T (since coords go by A and A is an involution, bases go by A^T).
  for (int i = 0; i < fd.rank; ++i)
    for (int j = 0; j < fd.rank; ++j) {
      Rat v = 0;
      for (int a = 0; a < fd.rank; ++a) {
        if (A[a][i] == 0) continue;
        for (int b = 0; b < fd.rank; ++b)
          if (A[b][j] != 0) v += A[a][i] * fd.omega[a][b] * A[b][j];
      }
      out.omega[i][j] = v;
    }
  out.validate();
  Seed res{out, s.id + "/mu" + std::to_string(k)};
  return res;
}

MVec s_k(const FixedData& fd, int k, const MVec& z) {
  // <d_k e_k, z> = z_k in f-coordinates
  MVec r = z;
  for (int i = 0; i < fd.rank; ++i) r[i] += z[k] * fd.b(i, k);
  return r;
}

MVec s_k_inv(const FixedData& fd, int k, const MVec& z) {
  MVec r = z;
  for (int i = 0; i < fd.rank; ++i) r[i] -= z[k] * fd.b(i, k);
  return r;
}

NVec s_k_star(const FixedData& fd, int k, const NVec& n) {
  Rat c = 0;
  for (int j = 0; j < fd.rank; ++j)
    if (n[j] != 0) c += fd.b(k, j) * n[j];
  NVec r = n;
  r[k] += to_int(c);
  return r;
}

NVec s_k_star_inv(const FixedData& fd, int k, const NVec& n) {
  Rat c = 0;
  for (int j = 0; j < fd.rank; ++j)
    if (n[j] != 0) c += fd.b(k, j) * n[j];
  NVec r = n;
  r[k] -= to_int(c);  // b_kk = 0, so the k-th coordinate never feeds back
  return r;
}

MVec t_k(const FixedData& fd, int k, const MVec& z) {
  return z[k] > 0 ? s_k(fd, k, z) : z;
}

MVec t_k_inv(const FixedData& fd, int k, const MVec& z) {
  // S_k preserves z_k, so the positive side maps to itself
  return z[k] > 0 ? s_k_inv(fd, k, z) : z;
}

MTilde s_k_tilde(const FixedData& fd, int k, const MTilde& mt) {
  // mt + <d_k e_k, mt>_1 p1*(e_k); the extended pairing reads off mt.m[k],
  // which must be an integer for the image to stay in the lattice
  NVec ek(fd.rank, 0);
  ek[k] = 1;
  return add(mt, p1_star(fd, scale(ek, to_int(mt.m[k]))));
}

MTilde t_k_tilde(const FixedData& fd, int k, const MTilde& mt) {
  // the shear vanishes at mt.m[k] == 0, so either branch agrees there
  return mt.m[k] > 0 ? s_k_tilde(fd, k, mt) : mt;
}

FixedData rescale(const FixedData& fd, const Rat& lambda) {
  if (lambda <= 0) throw std::invalid_argument("rescale: lambda must be positive");
  FixedData out = fd;
  for (int i = 0; i < fd.rank; ++i) {
    Rat d = Rat(fd.delta[i]) / lambda;
    if (!is_positive_integer(d))
      throw std::invalid_argument("rescale: delta_i/lambda not a positive integer");
    out.delta[i] = to_int(d);
    for (int j = 0; j < fd.rank; ++j) out.omega[i][j] = lambda * fd.omega[i][j];
  }
  out.validate();
  return out;
}

std::string vec_str(const NVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string vec_str(const MVec& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

}  // namespace scatterlab
