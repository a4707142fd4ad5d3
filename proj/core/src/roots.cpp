#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "p1energy/heights.hpp"

namespace p1energy::heights {

namespace {

using CLD = std::complex<long double>;

constexpr long double kEps = std::numeric_limits<long double>::epsilon();

struct Horner {
  CLD value;
  long double abs_bound;  // upper bound on |f(w)| including rounding error
};

Horner eval_with_bound(const std::vector<CLD>& c, CLD w) {
  CLD s = c.back();
  long double a = std::abs(c.back());
  const long double aw = std::abs(w);
  for (size_t i = c.size() - 1; i-- > 0;) {
    s = s * w + c[i];
    a = a * aw + std::abs(c[i]);
  }
  // Running error for Horner: |computed - exact| <= 2n u * sum |c_i||w|^i.
  const long double err = 2.0L * static_cast<long double>(c.size()) * kEps * a;
  return {s, std::abs(s) + err};
}

CLD eval(const std::vector<CLD>& c, CLD w) {
  CLD s = c.back();
  for (size_t i = c.size() - 1; i-- > 0;) s = s * w + c[i];
  return s;
}

}  // namespace

std::vector<CLD> complex_roots_ld(const IntPolynomial& f) {
  if (f.is_zero() || f.degree() < 1)
    throw std::invalid_argument("complex_roots: nonconstant polynomial required");
  if (!f.is_squarefree())
    throw std::invalid_argument("complex_roots: squarefree polynomial required");

  // Squarefreeness allows at most a simple root at 0; peel it off exactly.
  std::vector<BigInt> coeffs = f.coeffs();
  std::vector<CLD> roots;
  if (coeffs.front() == 0) {
    roots.push_back(CLD(0.0L, 0.0L));
    coeffs.erase(coeffs.begin());
  }
  const size_t n = coeffs.size() - 1;
  if (n == 0) return roots;

  std::vector<CLD> c(coeffs.size());
  std::vector<CLD> dc(coeffs.size() - 1);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    const long double x = coeffs[i].convert_to<long double>();
    if (!std::isfinite(static_cast<double>(x)))
      throw RootCertificationError("complex_roots: coefficient overflow");
    c[i] = CLD(x, 0.0L);
    if (i >= 1) dc[i - 1] = CLD(x * static_cast<long double>(i), 0.0L);
  }

  // Cauchy bound initialization on a slightly eccentric spiral.
  long double radius = 0.0L;
  for (size_t i = 0; i < n; ++i)
    radius = std::max(radius, std::abs(c[i]) / std::abs(c[n]));
  radius = 1.0L + radius;
  std::vector<CLD> w(n);
  for (size_t i = 0; i < n; ++i) {
    const long double theta =
        2.0L * 3.14159265358979323846L * static_cast<long double>(i) /
            static_cast<long double>(n) +
        0.376L;
    const long double r =
        radius * (0.5L + 0.3L * static_cast<long double>(i) /
                             static_cast<long double>(std::max<size_t>(n, 2)));
    w[i] = CLD(r * std::cos(theta), r * std::sin(theta));
  }

  // Aberth-Ehrlich simultaneous iteration.
  const int max_iters = 400;
  for (int iter = 0; iter < max_iters; ++iter) {
    long double worst = 0.0L;
    for (size_t i = 0; i < n; ++i) {
      const CLD fw = eval(c, w[i]);
      const CLD dfw = eval(dc, w[i]);
      if (fw == CLD(0.0L, 0.0L)) continue;
      CLD newton = dfw == CLD(0.0L, 0.0L) ? CLD(1e-3L, 1e-3L) : fw / dfw;
      CLD repel(0.0L, 0.0L);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const CLD d = w[i] - w[j];
        if (d == CLD(0.0L, 0.0L)) {
          repel = CLD(0.0L, 0.0L);
          break;
        }
        repel += CLD(1.0L, 0.0L) / d;
      }
      const CLD denom = CLD(1.0L, 0.0L) - newton * repel;
      const CLD step = denom == CLD(0.0L, 0.0L) ? newton : newton / denom;
      w[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(w[i])));
    }
    if (worst < 0.25L * kEps) break;
  }

  // Certification: every root of f lies in the union of the disks
  //   D(w_i, n |f(w_i)| / (|lc| prod_{j != i} |w_i - w_j|)),
  // and pairwise disjoint disks isolate exactly one root each.
  const long double lc = std::abs(c[n]);
  std::vector<long double> rad(n);
  for (size_t i = 0; i < n; ++i) {
    long double prod = 1.0L;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod *= std::abs(w[i] - w[j]);
    }
    // Lower bound on the product against rounding in the multiplications.
    prod *= std::pow(1.0L - kEps, static_cast<long double>(n));
    const long double fb = eval_with_bound(c, w[i]).abs_bound;
    if (prod <= 0.0L || lc <= 0.0L)
      throw RootCertificationError("complex_roots: degenerate certification data");
    rad[i] = static_cast<long double>(n) * fb / (lc * prod);
  }
  for (size_t i = 0; i < n; ++i) {
    if (!(rad[i] <= 1e-12L * std::max(1.0L, std::abs(w[i]))))
      throw RootCertificationError("complex_roots: residual too large for 1e-12 certification");
    for (size_t j = i + 1; j < n; ++j)
      if (std::abs(w[i] - w[j]) <= rad[i] + rad[j])
        throw RootCertificationError("complex_roots: inclusion disks overlap");
  }
  // The peeled-off zero root is simple, so the other disks must exclude 0.
  if (!roots.empty()) {
    for (size_t i = 0; i < n; ++i)
      if (std::abs(w[i]) <= rad[i])
        throw RootCertificationError("complex_roots: cannot separate a root from 0");
  }

  roots.insert(roots.end(), w.begin(), w.end());
  return roots;
}

std::vector<std::complex<double>> complex_roots(const IntPolynomial& f) {
  auto rs = complex_roots_ld(f);
  std::vector<std::complex<double>> out;
  out.reserve(rs.size());
  for (const auto& r : rs)
    out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  return out;
}

}  // namespace p1energy::heights
