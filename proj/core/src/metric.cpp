#include "p1energy/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace p1energy::metric {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

void require_same_context(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (!(x.context() == y.context()))
    throw std::invalid_argument("mismatched field contexts: " + x.context().to_string() +
                                " vs " + y.context().to_string());
}

// Largest K with p^K < 2^63.
long long u64_digit_cap(long long p) {
  long long k = 0;
  unsigned long long acc = 1;
  const unsigned long long lim = (1ULL << 63);
  while (acc < lim / static_cast<unsigned long long>(p)) {
    acc *= static_cast<unsigned long long>(p);
    ++k;
  }
  return k;
}

long long ord_i128(__int128 c, long long p) {
  unsigned __int128 u = c < 0 ? static_cast<unsigned __int128>(-c) : static_cast<unsigned __int128>(c);
  if (p == 2) {
    const std::uint64_t lo = static_cast<std::uint64_t>(u);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(u >> 64));
  }
  long long k = 0;
  const unsigned long long up = static_cast<unsigned long long>(p);
  while (u % up == 0) {
    u /= up;
    ++k;
  }
  return k;
}

}  // namespace

std::string FieldContext::to_string() const {
  if (archimedean) return "archimedean";
  return "Q_" + std::to_string(p);
}

// ---------------------------------------------------------------------------
// ProjectivePoint

ProjectivePoint ProjectivePoint::complex_pair(std::complex<double> x0, std::complex<double> x1) {
  if (!std::isfinite(x0.real()) || !std::isfinite(x0.imag()) || !std::isfinite(x1.real()) ||
      !std::isfinite(x1.imag()))
    throw std::invalid_argument("non-finite homogeneous coordinates");
  const double n0 = std::abs(x0), n1 = std::abs(x1);
  if (n0 == 0.0 && n1 == 0.0) throw std::invalid_argument("(0:0) is not a projective point");
  ProjectivePoint pt;
  pt.ctx_ = FieldContext::arch();
  if (n0 <= n1) {
    pt.c0_ = x0 / x1;
    pt.c1_ = 1.0;
  } else {
    pt.c0_ = 1.0;
    pt.c1_ = x1 / x0;
  }
  return pt;
}

ProjectivePoint ProjectivePoint::padic_pair(padic::PadicNumber x0, padic::PadicNumber x1) {
  if (x0.prime() != x1.prime()) throw std::invalid_argument("padic_pair: prime mismatch");
  const long long p = x0.prime();
  ProjectivePoint pt;
  pt.ctx_ = FieldContext::padic(p);
  if (x0.is_zeroish() && x1.is_zeroish())
    throw padic::PrecisionExhausted("projective point: both coordinates indistinguishable from 0");

  auto finish = [&pt](padic::PadicNumber a, padic::PadicNumber b) {
    pt.p0_ = std::move(a);
    pt.p1_ = std::move(b);
    return pt;
  };

  if (x0.is_exact_zero()) {
    padic::PadicNumber u = x1.shift(-x1.certified_val());
    return finish(x0, u.div_unit(u));  // (0 : 1)
  }
  if (x1.is_exact_zero()) {
    padic::PadicNumber u = x0.shift(-x0.certified_val());
    return finish(u.div_unit(u), x1);  // (1 : 0)
  }
  if (x0.is_ball() || x1.is_ball()) {
    const padic::PadicNumber& known = x0.is_ball() ? x1 : x0;
    const padic::PadicNumber& ball = x0.is_ball() ? x0 : x1;
    const long long v = known.certified_val();
    if (ball.val_lower_bound() <= v)
      throw padic::PrecisionExhausted(
          "projective point: cannot certify which coordinate has minimal valuation");
    padic::PadicNumber unit = known.shift(-v);
    padic::PadicNumber other = ball.shift(-v).div_unit(unit);
    padic::PadicNumber one = unit.div_unit(unit);
    return x0.is_ball() ? finish(other, one) : finish(one, other);
  }
  const long long v0 = x0.certified_val(), v1 = x1.certified_val();
  const long long m = std::min(v0, v1);
  padic::PadicNumber a = x0.shift(-m), b = x1.shift(-m);
  if (v1 == m) {
    padic::PadicNumber piv = b;
    return finish(a.div_unit(piv), b.div_unit(piv));
  }
  padic::PadicNumber piv = a;
  return finish(a.div_unit(piv), b.div_unit(piv));
}

ProjectivePoint ProjectivePoint::padic_affine(long long p, const BigRat& x) {
  return padic_pair(padic::PadicNumber::from_rational(p, x), padic::PadicNumber::one(p));
}

ProjectivePoint ProjectivePoint::padic_infinity(long long p) {
  return padic_pair(padic::PadicNumber::one(p), padic::PadicNumber::zero(p));
}

std::complex<double> ProjectivePoint::cx0() const {
  if (!archimedean()) throw std::logic_error("cx0 on p-adic point");
  return c0_;
}
std::complex<double> ProjectivePoint::cx1() const {
  if (!archimedean()) throw std::logic_error("cx1 on p-adic point");
  return c1_;
}
const padic::PadicNumber& ProjectivePoint::px0() const {
  if (archimedean()) throw std::logic_error("px0 on archimedean point");
  return *p0_;
}
const padic::PadicNumber& ProjectivePoint::px1() const {
  if (archimedean()) throw std::logic_error("px1 on archimedean point");
  return *p1_;
}

bool ProjectivePoint::canonical_less(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.archimedean()) {
    auto key = [](const ProjectivePoint& q) {
      return std::tuple<double, double, double, double>(q.c0_.real(), q.c0_.imag(),
                                                        q.c1_.real(), q.c1_.imag());
    };
    return key(a) < key(b);
  }
  using padic::PadicNumber;
  if (PadicNumber::representation_less(*a.p0_, *b.p0_)) return true;
  if (PadicNumber::representation_less(*b.p0_, *a.p0_)) return false;
  return PadicNumber::representation_less(*a.p1_, *b.p1_);
}

bool ProjectivePoint::canonical_equal(const ProjectivePoint& a, const ProjectivePoint& b) {
  return !canonical_less(a, b) && !canonical_less(b, a);
}

std::string ProjectivePoint::to_string() const {
  std::ostringstream os;
  if (archimedean()) {
    os << "(" << c0_.real();
    if (c0_.imag() != 0) os << (c0_.imag() > 0 ? "+" : "") << c0_.imag() << "i";
    os << " : " << c1_.real();
    if (c1_.imag() != 0) os << (c1_.imag() > 0 ? "+" : "") << c1_.imag() << "i";
    os << ")";
  } else {
    os << "(" << p0_->to_string() << " : " << p1_->to_string() << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// delta

double delta(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_context(x, y);
  if (x.archimedean()) return std::abs(x.cx0() * y.cx1() - y.cx0() * x.cx1());
  DeltaExponent e = delta_exponent(x, y);
  if (e.equal) return 0.0;
  return std::pow(static_cast<double>(x.context().p), static_cast<double>(-e.k));
}

DeltaExponent delta_exponent(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_context(x, y);
  if (x.archimedean()) throw std::logic_error("delta_exponent: p-adic contexts only");
  // Identical stored representations are equal points; distinct finite
  // representations that merely agree to the stored precision surface below
  // as a precision error rather than a guessed valuation.
  if (ProjectivePoint::canonical_equal(x, y)) return {true, 0};
  padic::PadicNumber cross = x.px0().mul(y.px1()).sub(y.px0().mul(x.px1()));
  if (cross.is_exact_zero()) return {true, 0};
  if (cross.is_ball())
    throw padic::PrecisionExhausted(
        "delta: cross term indistinguishable from 0 below p^" +
        std::to_string(cross.val_lower_bound()));
  return {false, cross.certified_val()};
}

bool delta_leq(const ProjectivePoint& x, const ProjectivePoint& y, long long k) {
  require_same_context(x, y);
  if (x.archimedean()) throw std::logic_error("delta_leq: p-adic contexts only");
  if (ProjectivePoint::canonical_equal(x, y)) return true;
  padic::PadicNumber cross = x.px0().mul(y.px1()).sub(y.px0().mul(x.px1()));
  if (cross.is_exact_zero()) return true;
  if (cross.is_ball()) {
    if (cross.val_lower_bound() >= k) return true;
    throw padic::PrecisionExhausted("delta_leq: membership undecidable at stored precision");
  }
  return cross.certified_val() >= k;
}

double neg_log_delta(const ProjectivePoint& x, const ProjectivePoint& y) {
  require_same_context(x, y);
  if (x.archimedean()) {
    const double d = delta(x, y);
    if (d == 0.0) return kInfD;
    return -std::log(d);
  }
  DeltaExponent e = delta_exponent(x, y);
  if (e.equal) return kInfD;
  return static_cast<double>(e.k) * std::log(static_cast<double>(x.context().p));
}

// ---------------------------------------------------------------------------
// MobiusMap

MobiusMap MobiusMap::from_integers(BigInt a, BigInt b, BigInt c, BigInt d) {
  MobiusMap m;
  m.integral_ = true;
  m.ia_ = std::move(a);
  m.ib_ = std::move(b);
  m.ic_ = std::move(c);
  m.id_ = std::move(d);
  if (m.det_integer() == 0) throw std::invalid_argument("MobiusMap: singular matrix");
  return m;
}

MobiusMap MobiusMap::from_complex(std::complex<double> a, std::complex<double> b,
                                  std::complex<double> c, std::complex<double> d) {
  MobiusMap m;
  m.integral_ = false;
  m.ca_ = a;
  m.cb_ = b;
  m.cc_ = c;
  m.cd_ = d;
  if (std::abs(a * d - b * c) == 0.0) throw std::invalid_argument("MobiusMap: singular matrix");
  return m;
}

BigInt MobiusMap::det_integer() const {
  if (!integral_) throw std::logic_error("det_integer on complex MobiusMap");
  return ia_ * id_ - ib_ * ic_;
}

bool MobiusMap::padic_integral_unit_det(long long p) const {
  return integral_ && det_integer() % p != 0;
}

ProjectivePoint MobiusMap::apply(const ProjectivePoint& x) const {
  if (x.archimedean()) {
    std::complex<double> a = ca_, b = cb_, c = cc_, d = cd_;
    if (integral_) {
      a = {ia_.convert_to<double>(), 0.0};
      b = {ib_.convert_to<double>(), 0.0};
      c = {ic_.convert_to<double>(), 0.0};
      d = {id_.convert_to<double>(), 0.0};
    }
    return ProjectivePoint::complex_pair(a * x.cx0() + b * x.cx1(), c * x.cx0() + d * x.cx1());
  }
  if (!integral_)
    throw std::invalid_argument("p-adic Mobius action requires integer matrix entries");
  const padic::PadicNumber& x0 = x.px0();
  const padic::PadicNumber& x1 = x.px1();
  padic::PadicNumber y0 = x0.mul_integer(ia_).add(x1.mul_integer(ib_));
  padic::PadicNumber y1 = x0.mul_integer(ic_).add(x1.mul_integer(id_));
  return ProjectivePoint::padic_pair(std::move(y0), std::move(y1));
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(std::vector<ProjectivePoint> points) : pts_(std::move(points)) {
  if (pts_.empty()) throw std::invalid_argument("PointSet: at least one point required");
  ctx_ = pts_.front().context();
  for (const auto& q : pts_)
    if (!(q.context() == ctx_)) throw std::invalid_argument("PointSet: mixed field contexts");
  std::vector<size_t> idx(pts_.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) {
    return ProjectivePoint::canonical_less(pts_[i], pts_[j]);
  });
  for (size_t i = 1; i < idx.size(); ++i)
    if (ProjectivePoint::canonical_equal(pts_[idx[i - 1]], pts_[idx[i]]))
      throw std::invalid_argument("PointSet: repeated point " + pts_[idx[i]].to_string());
}

PointSet PointSet::apply(const MobiusMap& m) const {
  std::vector<ProjectivePoint> out;
  out.reserve(pts_.size());
  for (const auto& q : pts_) out.push_back(m.apply(q));
  return PointSet(std::move(out));
}

// ---------------------------------------------------------------------------
// discrepancy

namespace {

double arch_pair_sum(const std::vector<ProjectivePoint>& pts) {
  const size_t n = pts.size();
  std::vector<std::complex<double>> a(n), b(n);
  for (size_t i = 0; i < n; ++i) {
    a[i] = pts[i].cx0();
    b[i] = pts[i].cx1();
  }
  // Fixed summation order (row by row) keeps the result deterministic.
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (size_t j = i + 1; j < n; ++j) {
      const std::complex<double> cross = a[i] * b[j] - a[j] * b[i];
      const double d2 = std::norm(cross);
      if (d2 == 0.0) throw std::invalid_argument("discrepancy: coincident points");
      row += std::log(d2);
    }
    total += row;
  }
  return -0.5 * total;  // sum over unordered pairs of -log delta
}

// Exact exponent sum over unordered pairs. Coordinates are packed into u64
// residues mod p^K when possible; rare uncertified pairs fall back to the
// full-precision path.
BigInt padic_pair_sum(const std::vector<ProjectivePoint>& pts, long long p) {
  const size_t n = pts.size();
  long long K = std::numeric_limits<long long>::max();
  for (const auto& q : pts) {
    K = std::min(K, q.px0().abs_prec());
    K = std::min(K, q.px1().abs_prec());
  }
  K = std::min(K, u64_digit_cap(p));

  auto slow_pair = [&](size_t i, size_t j) -> long long {
    DeltaExponent e = delta_exponent(pts[i], pts[j]);
    if (e.equal) throw std::invalid_argument("discrepancy: coincident points");
    return e.k;
  };

  if (K < 1) {
    BigInt total = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) total += slow_pair(i, j);
    return total;
  }

  std::vector<std::uint64_t> u0(n), u1(n);
  for (size_t i = 0; i < n; ++i) {
    u0[i] = pts[i].px0().representative(K).convert_to<std::uint64_t>();
    u1[i] = pts[i].px1().representative(K).convert_to<std::uint64_t>();
  }
  BigInt total = 0;
  unsigned long long run = 0;  // exponent sum for the current row
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const __int128 cross = static_cast<__int128>(u0[i]) * u1[j] -
                             static_cast<__int128>(u0[j]) * u1[i];
      long long k = (cross == 0) ? K : ord_i128(cross, p);
      if (k >= K) k = slow_pair(i, j);
      run += static_cast<unsigned long long>(k);
    }
    total += run;
    run = 0;
  }
  return total;
}

}  // namespace

BigRat discrepancy_logp_coeff(const PointSet& z) {
  if (z.context().archimedean)
    throw std::logic_error("discrepancy_logp_coeff: p-adic sets only");
  const long long n = z.size();
  if (n < 2) throw std::invalid_argument("discrepancy requires at least 2 points");
  BigInt sum = padic_pair_sum(z.points(), z.context().p);
  return BigRat(2 * sum, BigInt(n) * (n - 1));
}

double discrepancy(const PointSet& z) {
  const long long n = z.size();
  if (n < 2) throw std::invalid_argument("discrepancy requires at least 2 points");
  if (z.context().archimedean) {
    const double s = arch_pair_sum(z.points());
    return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
  }
  const BigRat c = discrepancy_logp_coeff(z);
  return c.convert_to<double>() * std::log(static_cast<double>(z.context().p));
}

double discrete_potential(const PointSet& z, const ProjectivePoint& x) {
  if (!(z.context() == x.context()))
    throw std::invalid_argument("discrete_potential: mismatched contexts");
  double total = 0.0;
  for (const auto& q : z.points()) {
    const double v = neg_log_delta(x, q);
    if (v == kInfD) return kInfD;
    total += v;
  }
  return total / static_cast<double>(z.size());
}

PointSet sample_point_set(const PointSampler& draw, long long n, std::uint64_t seed,
                          std::uint64_t stream) {
  RngStream rng(seed, stream);
  std::vector<ProjectivePoint> pts;
  pts.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) pts.push_back(draw(rng));
  return PointSet(std::move(pts));
}

double mc_energy_estimate(const PointSampler& draw, long long n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("mc_energy_estimate: n >= 2 required");
  return discrepancy(sample_point_set(draw, n, seed));
}

}  // namespace p1energy::metric
