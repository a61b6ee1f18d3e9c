#include "scatterlab/ordering.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace scatterlab {

Int bf2(const std::array<Int, 2>& a, const std::array<Int, 2>& b) {
  return a[1] * b[0] - a[0] * b[1];
}

namespace {

Int wdeg(std::array<Int, 2> w, const std::array<Int, 2>& n) {
  return w[0] * n[0] + w[1] * n[1];
}

std::string factor_str(const Factor2& f) {
  return "[" + std::to_string(f.n[0]) + "," + std::to_string(f.n[1]) + "," + f.c.get_str() + "]";
}

/* split integer exponents > 1 into unit factors; fractional exponents and
   exponent 1 pass through untouched */
Product2 decompose_initial(const Product2& c) {
  Product2 res;
  for (const Factor2& f : c) {
    if (is_integer(f.c) && f.c > 1) {
      Int m = to_int(f.c);
      for (Int j = 0; j < m; ++j) res.push_back({f.n, Rat(1)});
    } else {
      res.push_back(f);
    }
  }
  return res;
}

/* split an adjacent pair into p*c0 + p*c1 unit factors of exponent 1/p,
   left factor's copies first */
Product2 decompose_pair(Int p, const Factor2& a, const Factor2& b) {
  Rat cnt0 = p * a.c, cnt1 = p * b.c;
  if (!is_positive_integer(cnt0) || !is_positive_integer(cnt1))
    throw std::runtime_error("ordering: fractional unit count in pentagon decomposition at " +
                             factor_str(a) + " " + factor_str(b));
  Product2 res;
  Rat inv_p(1, p);
  for (Int j = 0; j < to_int(cnt0); ++j) res.push_back({a.n, inv_p});
  for (Int j = 0; j < to_int(cnt1); ++j) res.push_back({b.n, inv_p});
  return res;
}

/* one pass level: scan left to right, act on the first actionable pair, then
   restart the scan; stop when a full scan makes no move. Pairs with
   0 < bf != p (or wrong exponents) below the degree threshold are skipped here
   and handled by the caller's recursion. */
Product2 order_p_partial(Int L, std::array<Int, 2> w, Int p, Product2 res) {
  if (res.size() < 2) return res;
  Rat inv_p(1, p);
  bool ordered_p = false;
  while (!ordered_p) {
    size_t l = res.size();
    for (size_t i = 0; i + 1 < l; ++i) {
      Int b = bf2(res[i].n, res[i + 1].n);
      bool acted = false;
      if (b < 0) {
        // in order, move on
      } else if (b == 0) {
        if (wdeg(w, res[i].n) > wdeg(w, res[i + 1].n)) {
          std::swap(res[i], res[i + 1]);
          acted = true;
        }
      } else {
        if (wdeg(w, res[i].n) + wdeg(w, res[i + 1].n) > L) {
          // product degree exceeds the cutoff: the commutator is invisible,
          // swap freely
          std::swap(res[i], res[i + 1]);
          acted = true;
        } else if (b == p && res[i].c == inv_p && res[i + 1].c == inv_p) {
          // pentagon: (A, B) -> (B, A+B, A), all exponents 1/p
          Factor2 a = res[i];
          Factor2 mid{{a.n[0] + res[i + 1].n[0], a.n[1] + res[i + 1].n[1]}, inv_p};
          res[i] = res[i + 1];
          res[i + 1] = mid;
          res.insert(res.begin() + (long)i + 2, a);
          acted = true;
        }
      }
      if (acted) break;
      if (i == l - 2) ordered_p = true;
    }
  }
  return res;
}

Product2 order_p(Int L, std::array<Int, 2> w, Int p, Product2 res) {
  while (!check_ordered2(res, w)) {
    if (p == 1) res = decompose_initial(res);
    res = order_p_partial(L, w, p, res);
    size_t l = res.size();
    for (size_t i = 0; i + 1 < l; ++i) {
      Int q = bf2(res[i].n, res[i + 1].n);
      if (q > 0) {
        // leftmost still-unordered pair: exchange it at level q
        Product2 cin = decompose_pair(q, res[i], res[i + 1]);
        Product2 cout = order_p(L, w, q, cin);
        Product2 next(res.begin(), res.begin() + (long)i);
        next.insert(next.end(), cout.begin(), cout.end());
        next.insert(next.end(), res.begin() + (long)i + 2, res.end());
        res = std::move(next);
        break;
      }
    }
  }
  return join2(res);
}

}  // namespace

bool check_ordered2(const Product2& c, std::array<Int, 2> w) {
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    Int b = bf2(c[i].n, c[i + 1].n);
    if (b > 0) return false;
    if (b == 0 && wdeg(w, c[i].n) > wdeg(w, c[i + 1].n)) return false;
  }
  return true;
}

Product2 join2(const Product2& c) {
  Product2 res;
  for (const Factor2& f : c) {
    if (!res.empty() && res.back().n == f.n) res.back().c += f.c;
    else res.push_back(f);
  }
  return res;
}

void validate_product2(Int L, const Product2& c) {
  if (L <= 0) throw std::invalid_argument("ordering: cutoff degree must be positive");
  for (const Factor2& f : c) {
    if (f.n[0] < 0 || f.n[1] < 0 || (f.n[0] == 0 && f.n[1] == 0))
      throw std::invalid_argument("ordering: illegal exponent vector " + factor_str(f));
    Int g = std::gcd(f.n[0], f.n[1]);
    if (!(f.c > 0) || !is_positive_integer(f.c * g))
      throw std::invalid_argument("ordering: illegal exponent " + factor_str(f) +
                                  " (c * gcd(n) must be a positive integer)");
  }
}

namespace {

Product2 run_ordered(Int L, std::array<Int, 2> w, const Product2& c) {
  Product2 res = c;
  if (res.size() > 1) res = order_p(L, w, 1, res);
  // factors beyond the cutoff are invisible modulo degree > L
  Product2 kept;
  for (const Factor2& f : res)
    if (wdeg(w, f.n) <= L) kept.push_back(f);
  return kept;
}

}  // namespace

Product2 order_weighted(Int L, std::array<Int, 2> w, const Product2& c) {
  validate_product2(L, c);
  return run_ordered(L, w, c);
}

Product2 order_rescaled(Int L, std::array<Int, 2> w, const Product2& c) {
  if (L <= 0) throw std::invalid_argument("ordering: cutoff degree must be positive");
  for (const Factor2& f : c) {
    if (f.n[0] < 0 || f.n[1] < 0 || (f.n[0] == 0 && f.n[1] == 0))
      throw std::invalid_argument("ordering: illegal exponent vector " + factor_str(f));
    if (!(f.c > 0))
      throw std::invalid_argument("ordering: exponent must be positive " + factor_str(f));
  }
  return run_ordered(L, w, c);
}

Product2 order(Int L, const Product2& c) { return order_weighted(L, {1, 1}, c); }

}  // namespace scatterlab
