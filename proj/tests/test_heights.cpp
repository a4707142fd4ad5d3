#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "p1energy/bounds.hpp"
#include "p1energy/factor.hpp"
#include "p1energy/heights.hpp"
#include "p1energy/metric.hpp"
#include "p1energy/padic.hpp"
#include "p1energy/rng.hpp"

using namespace p1energy;
using namespace p1energy::heights;

namespace {

IntPolynomial poly(std::initializer_list<long long> c) { return IntPolynomial::from_ll(c); }

IntPolynomial random_squarefree(RngStream& rng, int max_deg, long long coeff_bound) {
  for (;;) {
    std::vector<BigInt> c(static_cast<size_t>(rng.next_int(2, max_deg)) + 1);
    for (auto& x : c) x = rng.next_int(-coeff_bound, coeff_bound);
    IntPolynomial f(std::move(c));
    if (f.degree() >= 2 && f.is_squarefree()) return f;
  }
}

// Direct-summation oracle for the archimedean local discrepancy.
double oracle_arch_discrepancy(const std::vector<std::complex<double>>& roots) {
  const double n = static_cast<double>(roots.size());
  double s = 0.0;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      s += -std::log(std::abs(roots[i] - roots[j])) +
           std::log(std::max(1.0, std::abs(roots[i]))) +
           std::log(std::max(1.0, std::abs(roots[j])));
    }
  return s / (n * (n - 1.0));
}

}  // namespace

TEST_CASE("complex_roots named examples") {
  auto r1 = complex_roots(poly({1, 0, 1}));  // x^2 + 1
  REQUIRE(r1.size() == 2);
  std::sort(r1.begin(), r1.end(),
            [](const auto& a, const auto& b) { return a.imag() < b.imag(); });
  CHECK(std::abs(r1[0] - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(r1[1] - std::complex<double>(0, 1)) < 1e-12);

  auto r2 = complex_roots(poly({-1, -1, 1}));  // x^2 - x - 1
  REQUIRE(r2.size() == 2);
  std::sort(r2.begin(), r2.end(),
            [](const auto& a, const auto& b) { return a.real() < b.real(); });
  CHECK(std::abs(r2[0].real() + 0.6180339887498949) < 1e-12);
  CHECK(std::abs(r2[1].real() - 1.6180339887498949) < 1e-12);
  CHECK(std::abs(r2[0].imag()) < 1e-12);

  auto r3 = complex_roots(poly({-2, 0, 0, 1}));  // x^3 - 2
  REQUIRE(r3.size() == 3);
  int real_count = 0;
  for (const auto& r : r3) {
    CHECK(std::abs(std::abs(r) - 1.2599210498948732) < 1e-12);
    if (std::abs(r.imag()) < 1e-12) ++real_count;
  }
  CHECK(real_count == 1);

  CHECK_THROWS(complex_roots(poly({0, 0, 1})));  // x^2 not squarefree
}

TEST_CASE("complex_roots certification on random squarefree inputs") {
  RngStream rng(10001);
  for (int iter = 0; iter < 100; ++iter) {
    IntPolynomial f = random_squarefree(rng, 8, 30);
    auto roots = complex_roots(f);
    REQUIRE(static_cast<long long>(roots.size()) == f.degree());
    // Residuals at the certified roots are tiny relative to the local scale.
    for (const auto& r : roots) {
      std::complex<double> v = 0.0;
      for (long long i = f.degree(); i >= 0; --i)
        v = v * r + std::complex<double>(f.coeff(i).convert_to<double>(), 0.0);
      double scale = std::abs(f.leading().convert_to<double>());
      for (const auto& r2 : roots)
        if (&r2 != &r) scale *= std::max(0.5, std::abs(r - r2));
      CHECK(std::abs(v) <= 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("sturm_real_roots named examples") {
  CHECK(sturm_real_roots(poly({-1, -1, 1})) == 2);
  CHECK(sturm_real_roots(poly({1, 0, 1})) == 0);
  CHECK(sturm_real_roots(poly({1, -3, 0, 1})) == 3);  // x^3 - 3x + 1, disc 81
  CHECK(is_totally_real(poly({1, -3, 0, 1})));
  CHECK_FALSE(is_totally_real(poly({-2, 0, 0, 1})));  // x^3 - 2
}

TEST_CASE("sturm count agrees with the certified root finder") {
  RngStream rng(10002);
  for (int iter = 0; iter < 150; ++iter) {
    IntPolynomial f = random_squarefree(rng, 6, 12);
    auto roots = complex_roots(f);
    long long real_count = 0;
    for (const auto& r : roots)
      if (std::abs(r.imag()) < 1e-11) ++real_count;
    CHECK(sturm_real_roots(f) == real_count);
  }
}

TEST_CASE("weil_height named examples") {
  CHECK(std::abs(weil_height(poly({-2, 1})) - std::log(2.0)) < 1e-12);
  // h(golden ratio) = (1/2) log((1+sqrt 5)/2), the Schinzel constant.
  CHECK(std::abs(weil_height(poly({-1, -1, 1})) - 0.2406059125298017) < 1e-10);
  CHECK(std::abs(weil_height(poly({-1, 2})) - std::log(2.0)) < 1e-12);  // h(1/2)
  // Cyclotomic root sets have height zero.
  CHECK(std::abs(weil_height(poly({1, 0, 1}))) < 1e-12);
  CHECK(std::abs(weil_height(poly({1, 1, 1, 1, 1}))) < 1e-11);
  CHECK(weil_height(poly({3, 7, 2, 5})) >= 0.0);
}

TEST_CASE("local_discrepancy_arch named examples") {
  // x^2 - x - 1: pair distance sqrt 5, log+ only from the golden ratio.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double expect = std::log(phi) - 0.5 * std::log(5.0);
  CHECK(std::abs(local_discrepancy_arch(poly({-1, -1, 1})).value - expect) < 1e-12);

  // x^2 + 1: roots +-i at distance 2, no log+ terms.
  CHECK(std::abs(local_discrepancy_arch(poly({1, 0, 1})).value + std::log(2.0)) < 1e-12);

  // x^2 - 2x: roots {0, 2}; the -log 2 and log+ 2 terms cancel.
  CHECK(std::abs(local_discrepancy_arch(poly({0, -2, 1})).value) < 1e-12);
}

TEST_CASE("local_discrepancy_arch agrees with direct summation and disc route") {
  RngStream rng(10003);
  for (int iter = 0; iter < 120; ++iter) {
    IntPolynomial f = random_squarefree(rng, 6, 5);
    const auto roots = complex_roots(f);
    const double via_impl = local_discrepancy_arch(f).value;
    CHECK(std::abs(via_impl - oracle_arch_discrepancy(roots)) < 1e-9);
    // Pair term replaced by the exact -log|disc/lc^(2n-2)| route.
    const double n = static_cast<double>(f.degree());
    double logplus = 0.0;
    for (const auto& r : roots) logplus += std::log(std::max(1.0, std::abs(r)));
    const double disc_mag = std::abs(discriminant(f).convert_to<double>());
    const double lc_mag = std::abs(f.leading().convert_to<double>());
    const double via_disc =
        (-std::log(disc_mag) + (2 * n - 2) * std::log(lc_mag)) / (n * (n - 1)) +
        2.0 * logplus / n;
    CHECK(std::abs(via_impl - via_disc) < 1e-9);
  }
}

TEST_CASE("local_discrepancy_padic named examples") {
  auto d5 = local_discrepancy_padic(poly({-1, -1, 1}), 5);
  CHECK(d5.logp_coeff == BigRat(1, 2));
  CHECK(std::abs(d5.value - 0.5 * std::log(5.0)) < 1e-15);

  CHECK(local_discrepancy_padic(poly({-1, -1, 1}), 7).logp_coeff == 0);

  // x^2 - 4: disc 16, unit roots after scaling; D_2 = 2 log 2 by direct
  // summation over the roots +-2.
  auto d2 = local_discrepancy_padic(poly({-4, 0, 1}), 2);
  CHECK(d2.logp_coeff == BigRat(2));

  // (2x-1)(x-1): the lc and root valuations cancel exactly.
  CHECK(local_discrepancy_padic(poly({1, -3, 2}), 2).logp_coeff == 0);

  // 2x^2 - 1: disc 8, lc 2, roots of valuation -1/2.
  CHECK(local_discrepancy_padic(poly({-1, 0, 2}), 2).logp_coeff == BigRat(3, 2));
}

TEST_CASE("verify_product_formula named examples") {
  CHECK(std::abs(verify_product_formula(poly({-1, -1, 1}))) <= 1e-9);
  CHECK(std::abs(verify_product_formula(poly({1, 0, 1}))) <= 1e-9);
  CHECK_THROWS_AS(verify_product_formula(poly({-2, 1})), std::invalid_argument);  // n = 1
}

TEST_CASE("product formula and Mahler bound on a random corpus") {
  RngStream rng(10004);
  for (int iter = 0; iter < 200; ++iter) {
    IntPolynomial f = random_squarefree(rng, 6, 5);
    CAPTURE(f.to_string());
    CHECK(std::abs(verify_product_formula(f)) <= 1e-9);
    const double n = static_cast<double>(f.degree());
    CHECK(local_discrepancy_arch(f).value >= -std::log(n) / (n - 1.0) - 1e-12);
  }
}

TEST_CASE("factorize covers the discrepancy support") {
  auto fs = factorize(BigInt(-3600));
  std::vector<std::pair<BigInt, int>> expect{{2, 4}, {3, 2}, {5, 2}};
  CHECK(fs == expect);
  // A semiprime beyond the trial bound must still split (Brent rho).
  BigInt a = 1000003, b = 1000033;
  auto fs2 = factorize(a * b);
  REQUIRE(fs2.size() == 2);
  CHECK(fs2[0].first == a);
  CHECK(fs2[1].first == b);
  CHECK(is_probable_prime(BigInt("1000000007")));
  CHECK_FALSE(is_probable_prime(BigInt("1000000007") * 97));
}

TEST_CASE("cross-path equality: lifted conjugates vs exact local discrepancy") {
  struct Case {
    IntPolynomial f;
    long long p;
  };
  std::vector<Case> cases;
  // Hensel-simple splittings with distinct residues.
  cases.push_back({poly({-1, -1, 1}), 11});
  cases.push_back({poly({1, 0, 1}), 5});
  cases.push_back({poly({0, -1, 1}), 7});
  // Residue collisions that need recursive zooming, including non-integral
  // roots handled through the reversal.
  cases.push_back({poly({3, -4, 1}), 2});        // (x-1)(x-3)
  cases.push_back({poly({1, -3, 2}), 2});        // (2x-1)(x-1)
  cases.push_back({poly({-1, 0, 4}), 2});        // (2x-1)(2x+1)
  cases.push_back({poly({9, -12, 3}).divide_exact(3).multiply(poly({-5, 1})), 2});
  RngStream rng(10005);
  const long long primes[] = {2, 3, 5};
  while (cases.size() < 40) {
    const long long p = primes[rng.next_below(3)];
    IntPolynomial f = poly({1});
    const int n = static_cast<int>(rng.next_int(2, 4));
    bool ok = true;
    std::vector<std::pair<long long, long long>> used;
    for (int i = 0; i < n; ++i) {
      long long a = 1 + static_cast<long long>(rng.next_below(3)) * (p - 1);  // 1 or p-ish
      long long b = rng.next_int(-9, 9);
      const long long g = std::gcd(a, std::abs(b));
      if (g > 1) {
        a /= g;
        b /= g;
      }
      for (auto& u : used)
        if (u.first == a && u.second == b) ok = false;
      used.push_back({a, b});
      f = f.multiply(poly({-b, a}));
    }
    if (!ok || !f.is_squarefree()) continue;
    cases.push_back({f, p});
  }
  for (const auto& c : cases) {
    CAPTURE(c.f.to_string());
    CAPTURE(c.p);
    REQUIRE(padic::is_totally_split(c.f, c.p));
    auto pts = padic_conjugates(c.f, c.p);
    metric::PointSet z(pts);
    CHECK(metric::discrepancy_logp_coeff(z) == local_discrepancy_padic(c.f, c.p).logp_coeff);
  }
}

TEST_CASE("search_L_S: totally real quadratics in the unit box") {
  SplittingConditions s;
  s.archimedean = true;
  auto report = search_L_S(s, 2, 1);
  REQUIRE(report.qualifying == 1);
  CHECK(report.min_polynomial == poly({-1, -1, 1}));
  CHECK(std::abs(report.min_height - 0.2406059125298017) < 1e-10);
  CHECK(report.min_height >= bounds::schinzel_bound() - 1e-12);
}

TEST_CASE("search_L_S: golden ratio is not totally 5-adic") {
  SplittingConditions s;
  s.primes = {5};
  auto report = search_L_S(s, 2, 1);
  for (const auto& hit : report.hits) CHECK_FALSE(hit.f == poly({-1, -1, 1}));
}

TEST_CASE("search_L_S: no counterexample to the mixed bound in a small box") {
  SplittingConditions s;
  s.primes = {2};
  s.archimedean = true;
  auto report = search_L_S(s, 3, 4);
  CHECK(std::abs(report.lower_bound - 0.4441882596) < 1e-9);
  for (const auto& hit : report.hits) {
    CAPTURE(hit.f.to_string());
    CHECK(hit.height >= 0.444188 - 1e-9);
  }
}
