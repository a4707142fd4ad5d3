#include <algorithm>
#include <limits>

#include "p1energy/bounds.hpp"
#include "p1energy/heights.hpp"
#include "p1energy/padic.hpp"

namespace p1energy::heights {

namespace {

// Does f mod p factor into linear forms over F_p (projectively, so a degree
// drop just moves roots to infinity)? Necessary for total splitting over Q_p.
bool splits_into_linears_mod_p(const IntPolynomial& f, long long p) {
  // Strip the p-part of the content first.
  long long m = std::numeric_limits<long long>::max();
  for (long long i = 0; i <= f.degree() && m > 0; ++i) {
    const BigInt& c = f.coeff(i);
    if (c != 0) m = std::min(m, *ord_of(c, p));
  }
  std::vector<long long> g;
  const BigInt pk = pow_big(p, m);
  for (long long i = 0; i <= f.degree(); ++i)
    g.push_back(static_cast<long long>(mod_reduce(f.coeff(i) / pk, p)));
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (g.size() <= 1) return true;
  for (long long r = 0; r < p && g.size() > 1; ++r) {
    for (;;) {
      // Synthetic division of g by (x - r) over F_p.
      std::vector<long long> q(g.size() - 1);
      long long acc = 0;
      for (size_t i = g.size(); i-- > 1;) {
        acc = (acc * r + g[i]) % p;
        q[i - 1] = acc;
      }
      if ((acc * r + g[0]) % p != 0) break;  // r no longer a root
      g = q;
      if (g.size() <= 1) break;
    }
  }
  return g.size() <= 1;
}

std::vector<BigInt> reversal_canonical(const std::vector<BigInt>& c) {
  std::vector<BigInt> r(c.rbegin(), c.rend());
  if (r.back() < 0)
    for (auto& x : r) x = -x;
  return r;
}

}  // namespace

SearchReport search_L_S(const SplittingConditions& s, int degree_max, long long coeff_max,
                        const SearchOptions& opts) {
  if (s.primes.empty() && !s.archimedean)
    throw std::invalid_argument("search_L_S: the condition set S must be nonempty");
  for (long long p : s.primes)
    if (!is_prime_small(p)) throw std::invalid_argument("search_L_S: non-prime in S");
  if (degree_max < 1 || coeff_max < 1)
    throw std::invalid_argument("search_L_S: positive degree and coefficient bounds required");

  SearchReport report;
  report.conditions = s;
  report.degree_max = degree_max;
  report.coeff_max = coeff_max;
  report.min_height = std::numeric_limits<double>::infinity();
  {
    std::vector<bounds::PlaceSpec> places;
    for (long long p : s.primes) places.push_back(bounds::PlaceSpec::finite(p));
    if (s.archimedean) places.push_back(bounds::PlaceSpec::arch());
    report.lower_bound = bounds::general_bound(places).total;
  }

  for (int d = 1; d <= degree_max; ++d) {
    std::vector<long long> c(static_cast<size_t>(d) + 1, 0);
    c[static_cast<size_t>(d)] = 1;
    for (size_t i = 0; i + 1 < c.size(); ++i) c[i] = -coeff_max;
    for (;;) {
      ++report.scanned;
      std::vector<BigInt> coeffs(c.begin(), c.end());
      do {
        IntPolynomial f{std::vector<BigInt>(coeffs)};
        if (opts.exclude_exceptional &&
            (f.coeff(0) == 0 || f.eval(BigInt(1)) == 0 || f.eval(BigInt(-1)) == 0))
          break;
        // Reversal twin already enumerated?
        if (f.coeff(0) != 0 && reversal_canonical(coeffs) < coeffs) break;
        if (f.content() != 1) break;  // the primitive twin is enumerated separately
        const BigInt disc = d >= 2 ? discriminant(f) : BigInt(1);
        if (disc == 0) break;  // not squarefree
        if (s.archimedean && d >= 2 && disc < 0) break;  // complex pair exists
        bool ok = true;
        for (long long p : s.primes)
          if (!splits_into_linears_mod_p(f, p)) {
            ok = false;
            break;
          }
        if (!ok) break;
        if (s.archimedean && !is_totally_real(f)) break;
        for (long long p : s.primes)
          if (!padic::is_totally_split(f, p)) {
            ok = false;
            break;
          }
        if (!ok) break;
        ++report.qualifying;
        const double h = weil_height(f);
        if (h < report.min_height) {
          report.min_height = h;
          report.min_polynomial = f;
        }
        if (report.hits.size() < opts.max_hits) report.hits.push_back({f, h});
      } while (false);

      // Odometer step over (c_0, ..., c_{d-1}, lead).
      size_t pos = 0;
      for (;;) {
        if (pos + 1 == c.size()) {
          if (c[pos] == coeff_max) {
            pos = c.size();
            break;
          }
          ++c[pos];
          break;
        }
        if (c[pos] == coeff_max) {
          c[pos] = -coeff_max;
          ++pos;
        } else {
          ++c[pos];
          break;
        }
      }
      if (pos == c.size()) break;
    }
  }
  return report;
}

}  // namespace p1energy::heights
