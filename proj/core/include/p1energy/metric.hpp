#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "p1energy/padic.hpp"
#include "p1energy/rng.hpp"

namespace p1energy::metric {

struct FieldContext {
  bool archimedean = true;
  long long p = 0;  // 0 for archimedean
  bool operator==(const FieldContext& o) const = default;
  static FieldContext arch() { return {true, 0}; }
  static FieldContext padic(long long p) { return {false, p}; }
  std::string to_string() const;
};

// A point of P^1 in normalized homogeneous coordinates. Construction
// canonicalizes: the pivot coordinate (the one of maximal absolute value,
// preferring x1) is scaled to 1, so max(|x0|,|x1|) = 1 and in the p-adic
// case at least one coordinate is a unit.
class ProjectivePoint {
 public:
  // Archimedean factories.
  static ProjectivePoint complex_pair(std::complex<double> x0, std::complex<double> x1);
  static ProjectivePoint real_affine(double x) { return complex_pair({x, 0.0}, {1.0, 0.0}); }
  static ProjectivePoint complex_affine(std::complex<double> z) { return complex_pair(z, 1.0); }
  static ProjectivePoint arch_infinity() { return complex_pair(1.0, 0.0); }

  // p-adic factories.
  static ProjectivePoint padic_pair(padic::PadicNumber x0, padic::PadicNumber x1);
  static ProjectivePoint padic_affine(long long p, const BigRat& x);  // exact (x : 1)
  static ProjectivePoint padic_infinity(long long p);

  const FieldContext& context() const { return ctx_; }
  bool archimedean() const { return ctx_.archimedean; }

  std::complex<double> cx0() const;
  std::complex<double> cx1() const;
  const padic::PadicNumber& px0() const;
  const padic::PadicNumber& px1() const;

  // Strict-weak order on canonical representations (for duplicate detection).
  static bool canonical_less(const ProjectivePoint& a, const ProjectivePoint& b);
  static bool canonical_equal(const ProjectivePoint& a, const ProjectivePoint& b);

  std::string to_string() const;

 private:
  ProjectivePoint() = default;
  FieldContext ctx_;
  std::complex<double> c0_{0.0, 0.0}, c1_{0.0, 0.0};
  std::optional<padic::PadicNumber> p0_, p1_;
};

// The projective metric |x0 y1 - y0 x1| / (max(|x0|,|x1|) max(|y0|,|y1|)).
double delta(const ProjectivePoint& x, const ProjectivePoint& y);

// p-adic delta as an exact exponent: delta = p^(-k), or equal points.
struct DeltaExponent {
  bool equal = false;   // delta = 0
  long long k = 0;
};
DeltaExponent delta_exponent(const ProjectivePoint& x, const ProjectivePoint& y);

// Ball membership delta(x,y) <= p^(-k): decidable even when the exact
// valuation of the cross term is below the stored precision.
bool delta_leq(const ProjectivePoint& x, const ProjectivePoint& y, long long k);

// -log delta, natural log; +infinity iff x = y.
double neg_log_delta(const ProjectivePoint& x, const ProjectivePoint& y);

// 2x2 matrix action on homogeneous coordinates: (x0, x1) -> (a x0 + b x1,
// c x0 + d x1). Integer entries act exactly on both field contexts.
class MobiusMap {
 public:
  static MobiusMap from_integers(BigInt a, BigInt b, BigInt c, BigInt d);
  static MobiusMap from_complex(std::complex<double> a, std::complex<double> b,
                                std::complex<double> c, std::complex<double> d);
  static MobiusMap identity() { return from_integers(1, 0, 0, 1); }
  static MobiusMap inversion() { return from_integers(0, 1, 1, 0); }
  static MobiusMap translation(const BigInt& t) { return from_integers(1, t, 0, 1); }

  bool integral() const { return integral_; }
  BigInt det_integer() const;
  // Entries in O_p with unit determinant (delta-isometry condition).
  bool padic_integral_unit_det(long long p) const;

  ProjectivePoint apply(const ProjectivePoint& x) const;

 private:
  bool integral_ = true;
  BigInt ia_, ib_, ic_, id_;
  std::complex<double> ca_, cb_, cc_, cd_;
};

// Finite subset of P^1 over one field context; duplicates (up to the stored
// precision) are rejected at construction since delta = 0 makes the
// discrepancy infinite.
class PointSet {
 public:
  explicit PointSet(std::vector<ProjectivePoint> points);

  long long size() const { return static_cast<long long>(pts_.size()); }
  const std::vector<ProjectivePoint>& points() const { return pts_; }
  const FieldContext& context() const { return ctx_; }

  PointSet apply(const MobiusMap& m) const;

 private:
  FieldContext ctx_;
  std::vector<ProjectivePoint> pts_;
};

// (1/(N(N-1))) sum over ordered pairs of -log delta; N >= 2 required.
double discrepancy(const PointSet& z);

// p-adic discrepancy is an exact rational multiple of log p; returns the
// rational coefficient.
BigRat discrepancy_logp_coeff(const PointSet& z);

// (1/N) sum of -log delta(x, alpha); +infinity when x is a member.
double discrete_potential(const PointSet& z, const ProjectivePoint& x);

using PointSampler = std::function<ProjectivePoint(RngStream&)>;

PointSet sample_point_set(const PointSampler& draw, long long n, std::uint64_t seed,
                          std::uint64_t stream = 0);

// Discrepancy of n independent draws; estimator of the minimal energy.
double mc_energy_estimate(const PointSampler& draw, long long n, std::uint64_t seed);

}  // namespace p1energy::metric
