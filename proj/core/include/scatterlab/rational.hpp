#pragma once

#include <gmpxx.h>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace scatterlab {

using Int = long;
using Rat = mpq_class;

using NVec = std::vector<Int>;  // lattice vector, coordinates in the e-basis
using MVec = std::vector<Rat>;  // point of the dual space, coordinates in the f-basis

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw std::runtime_error("expected integer rational, got " + q.get_str());
  if (!q.get_num().fits_slong_p()) throw std::runtime_error("integer overflow in rational");
  return q.get_num().get_si();
}

inline bool is_positive_integer(const Rat& q) { return is_integer(q) && q > 0; }

/* lcm of positive rationals in lowest terms: lcm(a/b, c/d) = lcm(a,c)/gcd(b,d).
   This is the smallest positive rational that is an integer multiple of both. */
inline Rat rat_lcm(const Rat& x, const Rat& y) {
  mpz_class num, den;
  mpz_lcm(num.get_mpz_t(), x.get_num().get_mpz_t(), y.get_num().get_mpz_t());
  mpz_gcd(den.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/* generalized binomial coefficient C(a, k) for rational a and k >= 0 */
inline Rat binom_general(const Rat& a, long k) {
  Rat r = 1;
  for (long j = 0; j < k; ++j) r *= (a - j) / (j + 1);
  return r;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("cannot parse rational: " + s);
  q.canonicalize();
  return q;
}

inline Int int_gcd(Int a, Int b) { return std::gcd(a, b); }

}  // namespace scatterlab
