#include "scatterlab/dilog.hpp"

#include <stdexcept>

namespace scatterlab {

namespace {

bool parallel(const NVec& a, const NVec& b) {
  return primitive_part(a) == primitive_part(b);
}

}  // namespace

bool is_ordered(const FixedData& fd, const DilogProduct& c) {
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    Rat v = skew(fd, c[i].n, c[i + 1].n);
    if (v > 0) return false;
    if (v == 0 && parallel(c[i].n, c[i + 1].n) && deg(c[i].n) > deg(c[i + 1].n)) return false;
  }
  return true;
}

bool is_anti_ordered(const FixedData& fd, const DilogProduct& c) {
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    Rat v = skew(fd, c[i].n, c[i + 1].n);
    if (v < 0) return false;
    if (v == 0 && parallel(c[i].n, c[i + 1].n) && deg(c[i].n) < deg(c[i + 1].n)) return false;
  }
  return true;
}

DilogProduct pentagon_rewrite(const FixedData& fd, const DilogFactor& left,
                              const DilogFactor& right) {
  Rat v = skew(fd, left.n, right.n);
  if (!(v > 0))
    throw std::invalid_argument("pentagon_rewrite: {left, right} must be positive");
  Rat inv = 1 / v;
  if (left.c != inv || right.c != inv)
    throw std::invalid_argument("pentagon_rewrite: both exponents must equal 1/{left, right}");
  return {DilogFactor{right.n, inv}, DilogFactor{add(left.n, right.n), inv},
          DilogFactor{left.n, inv}};
}

DilogProduct join_product(const DilogProduct& c) {
  DilogProduct res;
  for (const DilogFactor& f : c) {
    if (!res.empty() && res.back().n == f.n) res.back().c += f.c;
    else res.push_back(f);
  }
  return res;
}

DilogProduct decompose_unit(const DilogProduct& c) {
  DilogProduct res;
  for (const DilogFactor& f : c) {
    if (is_integer(f.c) && f.c > 1) {
      Int m = to_int(f.c);
      for (Int j = 0; j < m; ++j) res.push_back({f.n, Rat(1)});
    } else {
      res.push_back(f);
    }
  }
  return res;
}

Product2 to_product2(const DilogProduct& c) {
  Product2 out;
  for (const DilogFactor& f : c) {
    if (f.n.size() != 2) throw std::invalid_argument("rank-2 product expected");
    out.push_back({{f.n[0], f.n[1]}, f.c});
  }
  return out;
}

DilogProduct from_product2(const Product2& c) {
  DilogProduct out;
  for (const Factor2& f : c) out.push_back({NVec{f.n[0], f.n[1]}, f.c});
  return out;
}

DilogProduct order_product(Int cutoff, const DilogProduct& c) {
  return from_product2(order(cutoff, to_product2(c)));
}

}  // namespace scatterlab
