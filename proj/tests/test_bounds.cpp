#include "doctest.h"

#include <cmath>
#include <vector>

#include "p1energy/bounds.hpp"
#include "p1energy/equilibrium.hpp"

using namespace p1energy;
using namespace p1energy::bounds;

namespace {

std::vector<long long> sieve_primes(long long n) {
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  std::vector<long long> out;
  for (long long i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long long j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  return out;
}

}  // namespace

TEST_CASE("general_bound reproduces the worked example digits") {
  auto both = general_bound({PlaceSpec::finite(2), PlaceSpec::arch()});
  CHECK(std::abs(both.total - 0.444188) < 1e-6);
  REQUIRE(both.terms.size() == 2);
  CHECK(std::abs(both.terms[0].value - 0.231049) < 1e-6);
  CHECK(std::abs(both.terms[1].value - 0.213139) < 1e-6);
  CHECK(both.terms[0].coeff == BigRat(1, 3));       // (1/2) * 2/(2^2-1)
  CHECK(both.terms[1].coeff == BigRat(7, 4));       // times zeta(3)/pi^2

  auto just2 = general_bound({PlaceSpec::finite(2)});
  CHECK(std::abs(just2.total - 0.5 * 2.0 * std::log(2.0) / 3.0) < 1e-15);

  // Inertial degree 2 above p = 2: (1/2) * 4 log 2 / 15.
  auto f2 = general_bound({PlaceSpec::finite(2, 1, 1, 2)});
  CHECK(std::abs(f2.total - 2.0 * std::log(2.0) / 15.0) < 1e-15);
  CHECK(f2.terms[0].coeff == BigRat(2, 15));

  CHECK_THROWS_AS(general_bound({}), std::invalid_argument);
}

TEST_CASE("PlaceSpec validation") {
  CHECK_THROWS_AS(general_bound({PlaceSpec::finite(6)}), std::invalid_argument);
  CHECK_THROWS_AS(general_bound({PlaceSpec::finite(2, BigRat(3, 2))}), std::invalid_argument);
  CHECK_THROWS_AS(general_bound({PlaceSpec::finite(2, 1, 0, 1)}), std::invalid_argument);
  // q must be a power of p.
  CHECK_THROWS_AS(general_bound({PlaceSpec::finite(2, 1, 1, 1, BigInt(6))}),
                  std::invalid_argument);
  // Weights above one rational place cannot exceed 1.
  CHECK_THROWS_AS(
      general_bound({PlaceSpec::finite(2, BigRat(2, 3)), PlaceSpec::finite(2, BigRat(1, 2))}),
      std::invalid_argument);
  // ... but may split it.
  auto split = general_bound(
      {PlaceSpec::finite(2, BigRat(1, 2)), PlaceSpec::finite(2, BigRat(1, 2))});
  auto whole = general_bound({PlaceSpec::finite(2)});
  CHECK(std::abs(split.total - whole.total) < 1e-15);
}

TEST_CASE("bombieri_zannier_bound digits") {
  CHECK(std::abs(bombieri_zannier_bound({2}) - 0.115525) < 1e-6);
  CHECK(std::abs(bombieri_zannier_bound({3}) - 0.5 * std::log(3.0) / 4.0) < 1e-15);
  CHECK(std::abs(bombieri_zannier_bound({2, 3}) - 0.252851) < 1e-6);
  CHECK_THROWS_AS(bombieri_zannier_bound({}), std::invalid_argument);
  CHECK_THROWS_AS(bombieri_zannier_bound({4}), std::invalid_argument);
}

TEST_CASE("schinzel_bound digits and comparisons") {
  CHECK(std::abs(schinzel_bound() - 0.2406059125298017) < 1e-12);
  CHECK(std::abs(2.0 * schinzel_bound() - std::log((1.0 + std::sqrt(5.0)) / 2.0)) < 1e-15);
  // Better than the archimedean term of the general bound.
  CHECK(schinzel_bound() > 7.0 * equilibrium::zeta3() / (4.0 * M_PI * M_PI));
}

TEST_CASE("upper and integer bounds") {
  CHECK(std::abs(totp_upper_bound({2}) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(totp_upper_bound({3}) - 0.549306) < 1e-6);
  CHECK(std::abs(integer_bound({2}) - 0.346574) < 1e-6);
  CHECK(std::abs(integer_bound({5}) - 0.201180) < 1e-6);
  CHECK(std::abs(integer_bound({2, 3}) - 0.621227) < 1e-6);
  // Sandwich: lower bound below the liminf upper bound.
  CHECK(general_bound({PlaceSpec::finite(2)}).total <= totp_upper_bound({2}));
}

TEST_CASE("per-prime improvement over Bombieri-Zannier up to 10^4") {
  for (long long p : sieve_primes(10000)) {
    const double ours = general_bound({PlaceSpec::finite(p)}).total;
    const double bz = bombieri_zannier_bound({p});
    CHECK(ours > bz);
  }
}

TEST_CASE("general_bound is additive and monotone in S") {
  auto b2 = general_bound({PlaceSpec::finite(2)});
  auto b3 = general_bound({PlaceSpec::finite(3)});
  auto b23 = general_bound({PlaceSpec::finite(2), PlaceSpec::finite(3)});
  CHECK(std::abs(b23.total - b2.total - b3.total) < 1e-15);
  CHECK(b23.total > b2.total);
  auto with_arch = general_bound({PlaceSpec::finite(2), PlaceSpec::arch()});
  CHECK(with_arch.total > b2.total);
}

TEST_CASE("finite contribution decreases in e and f, vanishes as q^f grows") {
  for (long long q : {2, 3, 4, 5, 7, 8, 9}) {
    long long p = q == 4 || q == 8 ? 2 : (q == 9 ? 3 : q);
    double prev_e = 1e9;
    for (long long e = 1; e <= 6; ++e) {
      const double v = general_bound({PlaceSpec::finite(p, 1, e, 1, BigInt(q))}).total;
      CHECK(v < prev_e);
      prev_e = v;
    }
    double prev_f = 1e9;
    for (long long f = 1; f <= 6; ++f) {
      const double v = general_bound({PlaceSpec::finite(p, 1, 1, f, BigInt(q))}).total;
      CHECK(v < prev_f);
      prev_f = v;
    }
    CHECK(general_bound({PlaceSpec::finite(p, 1, 1, 40, BigInt(q))}).total < 1e-9);
  }
}

TEST_CASE("archimedean contribution is half the real minimal energy") {
  const double arch = general_bound({PlaceSpec::arch()}).total;
  CHECK(std::abs(arch - equilibrium::minimal_energy_real() / 2.0) < 1e-16);
  const double half = general_bound({PlaceSpec::arch(BigRat(1, 2))}).total;
  CHECK(std::abs(half - equilibrium::minimal_energy_real() / 4.0) < 1e-16);
}
