#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "p1energy/equilibrium.hpp"
#include "p1energy/metric.hpp"

using namespace p1energy;
using namespace p1energy::equilibrium;
using p1energy::metric::ProjectivePoint;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("zeta(3) and the closed-form constants") {
  CHECK(zeta3() == doctest::Approx(1.2020569031595942854).epsilon(1e-15));
  CHECK(minimal_energy_real() == doctest::Approx(0.4262783988).epsilon(1e-9));
  CHECK(std::abs(minimal_energy_real() - minimal_energy_real_series()) < 1e-14);
  CHECK(std::abs(minimal_energy_real() / 2.0 - 0.2131391994) < 1e-9);
}

TEST_CASE("p-adic minimal energy: closed form vs series") {
  CHECK(minimal_energy_padic(2) == doctest::Approx(2.0 * std::log(2.0) / 3.0).epsilon(1e-15));
  CHECK(minimal_energy_padic(3) == doctest::Approx(3.0 * std::log(3.0) / 8.0).epsilon(1e-15));
  for (long long q : {2, 3, 4, 5, 7, 9, 16})
    CHECK(std::abs(minimal_energy_padic(q) - minimal_energy_padic_series(q)) < 1e-14);
  CHECK_THROWS_AS(minimal_energy_padic(1), std::invalid_argument);
}

TEST_CASE("density_real: values, evenness, singularities") {
  CHECK(density_real(0.0) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-14));
  // Direct substitution at x = 3.
  CHECK(density_real(3.0) ==
        doctest::Approx(std::log(2.0) / (kPi * kPi * 3.0)).epsilon(1e-14));
  RngStream rng(9001);
  for (int i = 0; i < 200; ++i) {
    const double x = 10.0 * rng.next_double() + 1e-6;
    if (std::abs(x - 1.0) < 1e-9) continue;
    CHECK(density_real(-x) == density_real(x));
    CHECK(density_real(x) >= 0.0);
  }
  CHECK_THROWS_AS(density_real(1.0), std::domain_error);
  CHECK_THROWS_AS(density_real(-1.0), std::domain_error);
}

TEST_CASE("real_mass: total mass 1 and the symmetry quarters") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(std::abs(real_mass(-inf, inf) - 1.0) < 1e-8);
  CHECK(std::abs(real_mass(0.0, 1.0) - 0.25) < 1e-8);
  CHECK(std::abs(real_mass(-1.0, 1.0) - 0.5) < 1e-8);
  // Inversion symmetry: mass(c, inf) = mass(0, 1/c).
  for (double c : {2.0, 3.5, 10.0})
    CHECK(std::abs(real_mass(c, inf) - real_mass(0.0, 1.0 / c)) < 1e-9);
  // Additivity over a split point.
  CHECK(std::abs(real_mass(-0.7, 2.3) - real_mass(-0.7, 0.4) - real_mass(0.4, 2.3)) < 1e-9);
}

TEST_CASE("potential_real is the constant 7 zeta(3) / (2 pi^2)") {
  const double target = minimal_energy_real();
  for (double x : {0.0, 0.5, 2.0}) {
    CHECK(std::abs(potential_real(x) - target) < 1e-6);
  }
  CHECK_THROWS_AS(potential_real(1.0), std::domain_error);
}

TEST_CASE("potential_real constancy on a coarse grid") {
  double lo = 1e300, hi = -1e300;
  for (int k = 0; k < 50; ++k) {
    const double x = -10.0 + 20.0 * k / 49.0;
    const double v = potential_real(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-5);
}

TEST_CASE("p-adic ball and sphere masses") {
  CHECK(ball_mass_padic(2, 1) == BigRat(1, 3));
  CHECK(ball_mass_padic(3, 2) == BigRat(1, 12));
  CHECK(sphere_mass_padic(2, 1) == BigRat(1, 6));
  for (long long p : {2, 3, 5})
    for (long long n = 1; n <= 4; ++n)
      CHECK(ball_mass_padic(p, n) - ball_mass_padic(p, n + 1) == sphere_mass_padic(p, n));
}

TEST_CASE("RealEquilibrium: CDF table and inversion accuracy") {
  RealEquilibrium eq;
  CHECK(std::abs(eq.quarter_mass() - 0.25) < 1e-8);
  RngStream rng(9002);
  for (int i = 0; i < 500; ++i) {
    const double t = rng.next_double() * eq.quarter_mass() * 0.999;
    const double x = eq.invert01(t);
    CHECK(std::abs(eq.cdf01(x) - t) < 1e-9);
  }
}

TEST_CASE("real sampler: quadrant mass, sign symmetry, KS statistic") {
  RealEquilibrium eq;
  RngStream rng(9003);
  const int n = 100000;
  int in01 = 0, positive = 0;
  std::vector<double> unit_interval;
  for (int i = 0; i < n; ++i) {
    const double x = eq.sample_affine(rng);
    if (x > 0) ++positive;
    if (x > 0 && x < 1) {
      ++in01;
      unit_interval.push_back(x);
    }
  }
  // Binomial 3 sigma around 1/4 and 1/2.
  CHECK(std::abs(in01 / double(n) - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / n));
  CHECK(std::abs(positive / double(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
  // Kolmogorov-Smirnov against the module's own conditional CDF.
  std::sort(unit_interval.begin(), unit_interval.end());
  double ks = 0.0;
  const double m = static_cast<double>(unit_interval.size());
  for (size_t i = 0; i < unit_interval.size(); ++i) {
    const double f = eq.cdf01(unit_interval[i]) / eq.quarter_mass();
    ks = std::max(ks, std::abs(f - (i + 1) / m));
    ks = std::max(ks, std::abs(f - i / m));
  }
  CHECK(ks < 1.63 / std::sqrt(m));  // 99% level
}

TEST_CASE("p-adic sampler: ball frequencies within 3 sigma") {
  const int n = 100000;
  for (long long p : {2, 3, 5}) {
    PadicEquilibrium eq(p, 24);
    RngStream rng(9100 + p);
    auto zero = ProjectivePoint::padic_affine(p, BigRat(0));
    auto inf = ProjectivePoint::padic_infinity(p);
    long long hits1 = 0, hits2 = 0, hits_inf = 0;
    for (int i = 0; i < n; ++i) {
      auto x = eq.sample(rng);
      auto e0 = metric::delta_exponent(zero, x);
      auto einf = metric::delta_exponent(inf, x);
      if (e0.equal || e0.k >= 1) ++hits1;
      if (e0.equal || e0.k >= 2) ++hits2;
      if (einf.equal || einf.k >= 1) ++hits_inf;
    }
    auto check_freq = [&](long long hits, const BigRat& mass) {
      const double mu = mass.convert_to<double>();
      CHECK(std::abs(hits / double(n) - mu) < 3.0 * std::sqrt(mu * (1 - mu) / n));
    };
    check_freq(hits1, ball_mass_padic(p, 1));
    check_freq(hits2, ball_mass_padic(p, 2));
    check_freq(hits_inf, ball_mass_padic(p, 1));
  }
}

TEST_CASE("p-adic sampler: ball frequencies invariant under a Mobius map") {
  const int n = 60000;
  const long long p = 3;
  PadicEquilibrium eq(p, 24);
  auto m = metric::MobiusMap::from_integers(2, 3, 1, 5);  // det 7, a 3-unit
  REQUIRE(m.padic_integral_unit_det(p));
  RngStream rng(9200);
  auto zero = ProjectivePoint::padic_affine(p, BigRat(0));
  long long before = 0, after = 0;
  for (int i = 0; i < n; ++i) {
    auto x = eq.sample(rng);
    auto y = m.apply(x);
    auto ex = metric::delta_exponent(zero, x);
    auto ey = metric::delta_exponent(zero, y);
    if (ex.equal || ex.k >= 1) ++before;
    if (ey.equal || ey.k >= 1) ++after;
  }
  const double mu = ball_mass_padic(p, 1).convert_to<double>();
  const double sigma = std::sqrt(mu * (1 - mu) / n);
  CHECK(std::abs(before / double(n) - mu) < 3.0 * sigma);
  CHECK(std::abs(after / double(n) - mu) < 3.0 * sigma);
}

TEST_CASE("discrete potential of p-adic samples approaches q log q/(q^2-1)") {
  const long long p = 2;
  auto sampler = EquilibriumSampler::padic(p, 40);
  auto z = metric::sample_point_set(sampler.drawer(), 20000, 424242);
  auto zero = ProjectivePoint::padic_affine(p, BigRat(0));
  const double v = metric::discrete_potential(z, zero);
  CHECK(std::abs(v - minimal_energy_padic(p)) < 0.02);
}

TEST_CASE("Monte Carlo discrepancy approaches the minimal energy") {
  auto real = EquilibriumSampler::real();
  CHECK(std::abs(metric::mc_energy_estimate(real.drawer(), 4000, 1234) -
                 minimal_energy_real()) < 0.01);
  auto p2 = EquilibriumSampler::padic(2, 60);
  CHECK(std::abs(metric::mc_energy_estimate(p2.drawer(), 4000, 1234) -
                 minimal_energy_padic(2)) < 0.01);
}

TEST_CASE("EquilibriumSampler handles and targets") {
  auto real = EquilibriumSampler::real();
  CHECK(real.context().archimedean);
  CHECK(real.target_energy() == minimal_energy_real());
  auto p5 = EquilibriumSampler::padic(5);
  CHECK(p5.context() == metric::FieldContext::padic(5));
  CHECK(p5.target_energy() == minimal_energy_padic(5));
}
