#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <gmpxx.h>

#include "error.hpp"

namespace euler_entropy {

using BigInt = mpz_class;
using Rational = mpq_class;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Natural log of a positive big integer without overflowing a double.
inline double log_of(const BigInt& x) {
  if (sgn(x) <= 0) throw InputError("log_of: argument must be positive");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

inline double log_of(const Rational& q) {
  return log_of(BigInt(q.get_num())) - log_of(BigInt(q.get_den()));
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline std::string to_decimal(const BigInt& x) { return x.get_str(10); }

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt power(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// (n-1)!! for even n: the number of perfect matchings on n points.
inline BigInt matchings_count(unsigned long n) {
  if (n % 2 != 0) throw InputError("matchings_count: odd number of points");
  BigInt r = 1;
  for (unsigned long j = n; j > 1; j -= 2) r *= static_cast<unsigned long>(j - 1);
  return r;
}

}  // namespace euler_entropy
