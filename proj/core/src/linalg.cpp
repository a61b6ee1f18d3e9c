#include "scatterlab/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace scatterlab {

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = (int)m.size(), cols = (int)m[0].size();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(m[r], m[sel]);
    Rat inv = m[r][c];
    for (int j = 0; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rat_rank(RatMat m) { return (int)rref(m).size(); }

RatMat kernel_basis(const RatMat& m) {
  if (m.empty()) return {};
  int cols = (int)m[0].size();
  RatMat a = m;
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  RatMat basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    MVec v(cols, Rat(0));
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][c];
    basis.push_back(v);
  }
  return basis;
}

std::vector<NVec> kernel_basis_int(const RatMat& m) {
  // Clear denominators rowwise (kernel unchanged), then column-reduce with
  // unimodular operations; the unreduced columns of the transform spanning the
  // zero image give a basis of the full (saturated) integer kernel.
  int rows = (int)m.size();
  int cols = rows ? (int)m[0].size() : 0;
  if (cols == 0) return {};
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (int i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (int j = 0; j < cols; ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[i][j].get_den().get_mpz_t());
    for (int j = 0; j < cols; ++j) {
      Rat q = m[i][j] * Rat(l);
      a[i][j] = q.get_num();
    }
  }
  std::vector<std::vector<mpz_class>> u(cols, std::vector<mpz_class>(cols, 0));
  for (int j = 0; j < cols; ++j) u[j][j] = 1;
  std::vector<bool> used(cols, false);
  auto col_sub = [&](int dst, int src, const mpz_class& q) {
    for (int i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (int i = 0; i < cols; ++i) u[i][dst] -= q * u[i][src];
  };
  for (int i = 0; i < rows; ++i) {
    for (;;) {
      int best = -1;
      for (int c = 0; c < cols; ++c) {
        if (used[c] || a[i][c] == 0) continue;
        if (best < 0 || mpz_cmpabs(a[i][c].get_mpz_t(), a[i][best].get_mpz_t()) < 0) best = c;
      }
      if (best < 0) break;
      bool done = true;
      for (int c = 0; c < cols; ++c) {
        if (c == best || used[c] || a[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[i][best].get_mpz_t());
        col_sub(c, best, q);
        if (a[i][c] != 0) done = false;
      }
      if (done) { used[best] = true; break; }
    }
  }
  std::vector<NVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (used[c]) continue;
    bool zero = true;
    for (int i = 0; i < rows; ++i)
      if (a[i][c] != 0) { zero = false; break; }
    if (!zero) throw std::runtime_error("integer kernel reduction failed");
    NVec v(cols);
    for (int i = 0; i < cols; ++i) {
      if (!u[i][c].fits_slong_p()) throw std::runtime_error("integer kernel overflow");
      v[i] = u[i][c].get_si();
    }
    basis.push_back(v);
  }
  return basis;
}

Rat dot(const MVec& a, const MVec& b) {
  Rat r = 0;
  for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

NVec to_primitive_int(const MVec& v) {
  mpz_class l = 1;
  for (const Rat& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_class g = 0;
  std::vector<mpz_class> scaled(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat q = v[i] * Rat(l);
    scaled[i] = q.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled[i].get_mpz_t());
  }
  NVec out(v.size(), 0);
  if (g == 0) return out;  // zero vector stays zero
  for (size_t i = 0; i < v.size(); ++i) {
    mpz_class q = scaled[i] / g;
    if (!q.fits_slong_p()) throw std::runtime_error("primitive vector overflow");
    out[i] = q.get_si();
  }
  return out;
}

MVec to_mvec(const NVec& v) {
  MVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

}  // namespace scatterlab
