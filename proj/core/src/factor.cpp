#include "p1energy/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace p1energy {

namespace {

BigInt powm_big(BigInt b, BigInt e, const BigInt& m) {
  BigInt r = 1;
  b %= m;
  while (e > 0) {
    if ((e & 1) != 0) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

bool miller_rabin(const BigInt& n, const BigInt& a) {
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  BigInt x = powm_big(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

BigInt brent_rho(const BigInt& n, unsigned seed) {
  // Brent's cycle-finding variant of Pollard rho.
  const BigInt c = 1 + seed;
  BigInt y = 2 + seed, g = 1, q = 1, x = 0, ys = 0;
  const int m = 128;
  BigInt r = 1;
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = (y * y + c) % n;
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      const BigInt lim = std::min(BigInt(m), BigInt(r - k));
      for (BigInt i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

void factor_rec(const BigInt& n, std::map<BigInt, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = n;
  for (unsigned seed = 0; d == n || d == 1; ++seed) {
    if (seed > 64) throw std::runtime_error("factorize: rho failed to split " + n.str());
    d = brent_rho(n, seed);
  }
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  for (long long p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (long long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (!miller_rabin(n, a)) return false;
  return true;
}

std::vector<std::pair<BigInt, int>> factorize(const BigInt& n, long long trial_bound) {
  if (n == 0) throw std::invalid_argument("factorize: n must be nonzero");
  BigInt m = abs(n);
  std::map<BigInt, int> out;
  for (long long p = 2; p <= trial_bound && BigInt(p) * p <= m; p == 2 ? p = 3 : p += 2) {
    while (m % p == 0) {
      ++out[BigInt(p)];
      m /= p;
    }
  }
  if (m > 1) factor_rec(m, out);
  return {out.begin(), out.end()};
}

}  // namespace p1energy
