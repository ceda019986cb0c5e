#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace sixv {

/// Exact arithmetic used wherever the spec of a test is an identity
/// rather than an approximation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rational_pow(const Rational& base, long long e) {
  if (e < 0) return Rational(1) / rational_pow(base, -e);
  Rational r = 1, b = base;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

inline BigInt bigint_pow(const BigInt& base, long long e) {
  BigInt r = 1, b = base;
  for (; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace sixv
