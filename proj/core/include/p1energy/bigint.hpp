#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>

namespace p1energy {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// p^e for small nonnegative e.
inline BigInt pow_big(long long p, long long e) {
  if (e < 0) throw std::invalid_argument("pow_big: negative exponent");
  BigInt r = 1, b = p;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Largest k with p^k | n; nullopt (= +infinity) for n = 0.
inline std::optional<long long> ord_of(const BigInt& n, long long p) {
  if (n == 0) return std::nullopt;
  BigInt m = abs(n);
  long long k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

// Inverse of a mod m (m > 1, gcd(a, m) = 1).
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r0 = m, r1 = ((a % m) + m) % m;
  BigInt t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    BigInt t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: not invertible");
  return ((t0 % m) + m) % m;
}

inline BigInt mod_reduce(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime_small(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// q = p^k for some k >= 1?
inline bool is_power_of(const BigInt& q, long long p) {
  if (q < p) return false;
  BigInt m = q;
  while (m % p == 0) m /= p;
  return m == 1;
}

}  // namespace p1energy
