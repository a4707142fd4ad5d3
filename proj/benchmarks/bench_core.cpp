#include <benchmark/benchmark.h>

#include "p1energy/equilibrium.hpp"
#include "p1energy/heights.hpp"
#include "p1energy/metric.hpp"
#include "p1energy/padic.hpp"
#include "p1energy/rng.hpp"

using namespace p1energy;

namespace {

std::vector<metric::ProjectivePoint> padic_points(long long p, long long prec, int n,
                                                  std::uint64_t seed) {
  equilibrium::PadicEquilibrium eq(p, prec);
  RngStream rng(seed);
  std::vector<metric::ProjectivePoint> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts.push_back(eq.sample(rng));
  return pts;
}

void BM_delta_arch(benchmark::State& state) {
  auto x = metric::ProjectivePoint::complex_affine({0.3, 0.7});
  auto y = metric::ProjectivePoint::complex_affine({-1.2, 0.1});
  for (auto _ : state) benchmark::DoNotOptimize(metric::delta(x, y));
}
BENCHMARK(BM_delta_arch);

void BM_delta_exponent_padic(benchmark::State& state) {
  auto pts = padic_points(state.range(0), 32, 2, 99);
  for (auto _ : state) benchmark::DoNotOptimize(metric::delta_exponent(pts[0], pts[1]));
}
BENCHMARK(BM_delta_exponent_padic)->Arg(2)->Arg(5);

void BM_discrepancy_padic(benchmark::State& state) {
  const long long p = 2;
  metric::PointSet z(padic_points(p, 60, static_cast<int>(state.range(0)), 7));
  for (auto _ : state) benchmark::DoNotOptimize(metric::discrepancy(z));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_discrepancy_padic)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_discrepancy_arch(benchmark::State& state) {
  equilibrium::RealEquilibrium eq;
  RngStream rng(7);
  std::vector<metric::ProjectivePoint> pts;
  for (long long i = 0; i < state.range(0); ++i) pts.push_back(eq.sample(rng));
  metric::PointSet z(std::move(pts));
  for (auto _ : state) benchmark::DoNotOptimize(metric::discrepancy(z));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_discrepancy_arch)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_sample_real(benchmark::State& state) {
  equilibrium::RealEquilibrium eq;
  RngStream rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(eq.sample_affine(rng));
}
BENCHMARK(BM_sample_real);

void BM_sample_padic(benchmark::State& state) {
  equilibrium::PadicEquilibrium eq(state.range(0), 32);
  RngStream rng(11);
  for (auto _ : state) benchmark::DoNotOptimize(eq.sample(rng));
}
BENCHMARK(BM_sample_padic)->Arg(2)->Arg(5);

void BM_potential_real(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium::potential_real(0.3));
}
BENCHMARK(BM_potential_real);

void BM_complex_roots(benchmark::State& state) {
  IntPolynomial f = IntPolynomial::from_ll({-5, 3, -2, 1, 4, 1});
  for (auto _ : state) benchmark::DoNotOptimize(heights::complex_roots(f));
}
BENCHMARK(BM_complex_roots);

void BM_count_roots_Zp(benchmark::State& state) {
  IntPolynomial f = IntPolynomial::from_ll({3, -4, 1}).multiply(IntPolynomial::from_ll({-5, 1}));
  for (auto _ : state) benchmark::DoNotOptimize(padic::count_roots_Zp(f, 2));
}
BENCHMARK(BM_count_roots_Zp);

void BM_verify_product_formula(benchmark::State& state) {
  IntPolynomial f = IntPolynomial::from_ll({4, -3, -2, 0, 1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(heights::verify_product_formula(f));
}
BENCHMARK(BM_verify_product_formula);

}  // namespace

BENCHMARK_MAIN();
