#pragma once

#include <complex>
#include <string>
#include <vector>

#include "p1energy/intpoly.hpp"
#include "p1energy/metric.hpp"

namespace p1energy::heights {

struct RootCertificationError : std::runtime_error {
  explicit RootCertificationError(const std::string& what) : std::runtime_error(what) {}
};

// All complex roots by simultaneous (Aberth-Ehrlich) iteration, certified to
// 1e-12 relative accuracy via disjoint inclusion disks; throws
// RootCertificationError when the certificate cannot be established.
std::vector<std::complex<double>> complex_roots(const IntPolynomial& f);
// Extended-precision variant backing the height computations.
std::vector<std::complex<long double>> complex_roots_ld(const IntPolynomial& f);

// Exact count of distinct real roots (Sturm chain over rationals).
long long sturm_real_roots(const IntPolynomial& f);
bool is_totally_real(const IntPolynomial& f);

// (1/n)(log|lc| + sum log+ |alpha_i|): the absolute logarithmic Weil height
// of the root set (Mahler measure form).
double weil_height(const IntPolynomial& f);

struct LocalDiscrepancy {
  bool archimedean = false;
  long long p = 0;       // 0 at the archimedean place
  double value = 0.0;
  BigRat logp_coeff = 0;  // finite places: value = logp_coeff * log p, exact
  std::string place() const { return archimedean ? "inf" : std::to_string(p); }
};

// Normalized pairwise energy sum of the conjugates at one place.
LocalDiscrepancy local_discrepancy_arch(const IntPolynomial& f);
LocalDiscrepancy local_discrepancy_padic(const IntPolynomial& f, long long p);

// The archimedean place plus every prime dividing lc(f) * disc(f) (all other
// finite places vanish: unit roots and unit differences).
std::vector<LocalDiscrepancy> all_local_discrepancies(const IntPolynomial& f);

// 2 h(f) - sum_v D_v(f); |residual| <= 1e-9 is the product-formula contract.
double verify_product_formula(const IntPolynomial& f);

// Conjugates of a totally split f as points of P^1(Q_p), Hensel-lifted to
// ord_p(disc) + extra_digits of certified precision.
std::vector<metric::ProjectivePoint> padic_conjugates(const IntPolynomial& f, long long p,
                                                      long long extra_digits = 32);

// ---------------------------------------------------------------------------
// Exhaustive height search over splitting conditions

struct SplittingConditions {
  std::vector<long long> primes;  // finite places of S
  bool archimedean = false;       // infinity in S
  std::string to_string() const;
};

struct SearchHit {
  IntPolynomial f;
  double height = 0.0;
};

struct SearchOptions {
  // Skip polynomials vanishing at 0 or +-1: those roots are the finitely
  // many height-0 members every liminf bound exempts.
  bool exclude_exceptional = true;
  std::size_t max_hits = 1u << 20;
};

struct SearchReport {
  SplittingConditions conditions;
  int degree_max = 0;
  long long coeff_max = 0;
  long long scanned = 0;
  long long qualifying = 0;
  std::vector<SearchHit> hits;
  double min_height = 0.0;          // over hits; meaningful iff qualifying > 0
  IntPolynomial min_polynomial;
  double lower_bound = 0.0;         // Galois-splitting liminf bound for S
};

SearchReport search_L_S(const SplittingConditions& s, int degree_max, long long coeff_max,
                        const SearchOptions& opts = {});

}  // namespace p1energy::heights
