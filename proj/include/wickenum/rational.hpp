#pragma once

#include <gmpxx.h>

#include <climits>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "wickenum/errors.hpp"

namespace wickenum {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer factorial(unsigned long t) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), t);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Rational pow(const Rational& q, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

// |z| = mantissa * 2^exponent with the top 64 bits of z kept exactly.
inline std::pair<long double, long> top_bits(const Integer& z) {
  Integer a = abs(z);
  const long bits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
  long shift = bits > 64 ? bits - 64 : 0;
  if (shift > 0) a >>= shift;
  static_assert(sizeof(unsigned long) == 8, "expects LP64");
  return {static_cast<long double>(mpz_get_ui(a.get_mpz_t())), shift};
}

}  // namespace detail

inline long double log_abs(const Integer& z) {
  if (z == 0) return -std::numeric_limits<long double>::infinity();
  auto [m, e] = detail::top_bits(z);
  return std::log(m) + static_cast<long double>(e) * std::log(2.0L);
}

inline long double log_abs(const Rational& q) {
  return log_abs(Integer(q.get_num())) - log_abs(Integer(q.get_den()));
}

// Rounds to Real with roughly one ulp of long double accuracy.
template <class Real = long double>
Real to_floating(const Rational& q) {
  if (q == 0) return Real(0);
  auto [nm, ne] = detail::top_bits(Integer(q.get_num()));
  auto [dm, de] = detail::top_bits(Integer(q.get_den()));
  const long double mag = std::ldexp(nm / dm, static_cast<int>(ne - de));
  return static_cast<Real>(sgn(q) < 0 ? -mag : mag);
}

}  // namespace wickenum
