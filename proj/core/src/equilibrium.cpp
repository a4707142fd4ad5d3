#include "p1energy/equilibrium.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace p1energy::equilibrium {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInfD = std::numeric_limits<double>::infinity();

template <typename F>
double integrate_ts(const F& f, double a, double b, double tol, const char* what) {
  if (b <= a) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integ;
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  double v = integ.integrate(f, a, b, tol, &err, &l1, &levels);
  if (!(err <= 10.0 * tol * std::max(1.0, l1)))
    throw QuadratureError(std::string(what) + ": tanh-sinh did not reach tolerance");
  return v;
}

}  // namespace

double zeta3() {
  static const double value = [] {
    // Tail bracket: 1/(2(M+1)^2) <= sum_{n>M} n^-3 <= 1/(2M^2); the bracket
    // width 1/M^3 is below 1e-16 from M = 250000 on.
    const long long m = 250000;
    long double s = 0.0L;
    for (long long n = m; n >= 1; --n) {
      const long double x = static_cast<long double>(n);
      s += 1.0L / (x * x * x);
    }
    const long double lo = 0.5L / (static_cast<long double>(m + 1) * (m + 1));
    const long double hi = 0.5L / (static_cast<long double>(m) * m);
    return static_cast<double>(s + (lo + hi) / 2);
  }();
  return value;
}

double minimal_energy_real() { return 7.0 * zeta3() / (2.0 * kPi * kPi); }

double minimal_energy_real_series() {
  static const double value = [] {
    const long long m = 250000;  // odd numbers 1, 3, ..., 2m+1
    long double s = 0.0L;
    for (long long n = m; n >= 0; --n) {
      const long double x = static_cast<long double>(2 * n + 1);
      s += 1.0L / (x * x * x);
    }
    // sum over odd k > K of k^-3 lies between 1/(4(K+2)^2) and 1/(4K^2).
    const long double k = static_cast<long double>(2 * m + 1);
    const long double lo = 0.25L / ((k + 2) * (k + 2));
    const long double hi = 0.25L / (k * k);
    return static_cast<double>((s + (lo + hi) / 2) * 4.0L / (kPi * kPi));
  }();
  return value;
}

double minimal_energy_padic(long long q) {
  if (q < 2) throw std::invalid_argument("minimal_energy_padic: q >= 2 required");
  const double qd = static_cast<double>(q);
  return qd * std::log(qd) / (qd * qd - 1.0);
}

double minimal_energy_padic_series(long long q) {
  if (q < 2) throw std::invalid_argument("minimal_energy_padic_series: q >= 2 required");
  const double qd = static_cast<double>(q);
  long double s = 0.0L, term;
  long long n = 1;
  long double qn = qd;
  do {
    term = static_cast<long double>(n) / qn;
    s += term;
    ++n;
    qn *= qd;
  } while (term > 1e-20L);
  return (qd - 1.0) * std::log(qd) / (qd + 1.0) * static_cast<double>(s);
}

double density_real(double x) {
  const double y = std::abs(x);
  if (y == 1.0) throw std::domain_error("density_real: integrable singularity at x = +-1");
  if (!std::isfinite(y)) return 0.0;
  if (y < 1e-8) return (2.0 + 2.0 * y * y / 3.0) / (kPi * kPi);
  double logratio;  // log|(y+1)/(y-1)|
  if (y < 1.0)
    logratio = std::log1p(y) - std::log1p(-y);
  else
    logratio = std::log1p(2.0 / (y - 1.0));
  return logratio / (kPi * kPi * y);
}

namespace {

// mu_R([u,v]) for 0 <= u <= v <= 1.
double mass01(double u, double v, double tol) {
  return integrate_ts([](double y) { return density_real(y); }, u, v, tol, "real_mass");
}

}  // namespace

double real_mass(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b) || a > b)
    throw std::invalid_argument("real_mass: need a <= b");
  // Fold onto [0,1]: evenness maps negatives, inversion maps (1,inf).
  struct Seg {
    double lo, hi;
  };
  auto fold_positive = [&](double u, double v) {
    // mass of [u,v] with 0 <= u <= v <= +inf
    double total = 0.0;
    const double u1 = std::min(u, 1.0), v1 = std::min(v, 1.0);
    if (v1 > u1) total += mass01(u1, v1, tol);
    const double u2 = std::max(u, 1.0), v2 = std::max(v, 1.0);
    if (v2 > u2) total += mass01(v2 == kInfD ? 0.0 : 1.0 / v2, 1.0 / u2, tol);
    return total;
  };
  double total = 0.0;
  if (b > 0.0) total += fold_positive(std::max(a, 0.0), b);
  if (a < 0.0) total += fold_positive(std::max(-b, 0.0), -a);
  return total;
}

double potential_real(double x, double tol) {
  if (std::abs(x) == 1.0)
    throw std::domain_error("potential_real: x = +-1 excluded");
  if (!std::isfinite(x)) throw std::domain_error("potential_real: finite x required");
  const double logplus = std::log(std::max(1.0, std::abs(x)));
  // Folded onto (0,1):
  //   p(x) = int_0^1 rho(y) [ -log|x-y| - log|x+y| - log|xy-1| - log|xy+1|
  //                           + 4 log+|x| ] dy
  auto integrand = [&](double y) {
    const double t = -std::log(std::abs(x - y)) - std::log(std::abs(x + y)) -
                     std::log(std::abs(x * y - 1.0)) - std::log(std::abs(x * y + 1.0)) +
                     4.0 * logplus;
    return density_real(y) * t;
  };
  const double ax = std::abs(x);
  double split = 0.0;
  if (ax > 0.0 && ax < 1.0) split = ax;
  if (ax > 1.0 && 1.0 / ax < 1.0) split = 1.0 / ax;
  double total = 0.0;
  if (split > 0.0 && split < 1.0) {
    total += integrate_ts(integrand, 0.0, split, tol, "potential_real");
    total += integrate_ts(integrand, split, 1.0, tol, "potential_real");
  } else {
    total += integrate_ts(integrand, 0.0, 1.0, tol, "potential_real");
  }
  return total;
}

BigRat ball_mass_padic(long long p, long long n) {
  if (n < 1) throw std::invalid_argument("ball_mass_padic: n >= 1 required");
  if (p < 2) throw std::invalid_argument("ball_mass_padic: p >= 2 required");
  return BigRat(1, pow_big(p, n - 1) * (p + 1));
}

BigRat sphere_mass_padic(long long p, long long n) {
  if (n < 1) throw std::invalid_argument("sphere_mass_padic: n >= 1 required");
  return BigRat(p - 1, pow_big(p, n) * (p + 1));
}

// ---------------------------------------------------------------------------
// RealEquilibrium

RealEquilibrium::RealEquilibrium(int table_size, double tol) : m_(table_size), tol_(tol) {
  if (m_ < 16) throw std::invalid_argument("RealEquilibrium: table_size >= 16 required");
  cdf_.resize(static_cast<size_t>(m_) + 1);
  dens_.resize(static_cast<size_t>(m_));
  cdf_[0] = 0.0;
  const double h = 1.0 / m_;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (int k = 0; k < m_; ++k) {
    const double a = k * h, b = (k + 1) * h;
    double cell;
    if (k + 1 == m_) {
      // Endpoint singularity of the density at 1.
      cell = integrate_ts([](double y) { return density_real(y); }, a, b, tol_ / 10,
                          "RealEquilibrium");
    } else {
      double err = 0.0;
      cell = GK::integrate([](double y) { return density_real(y); }, a, b, 12, tol_ / 10, &err);
    }
    cdf_[static_cast<size_t>(k) + 1] = cdf_[static_cast<size_t>(k)] + cell;
    dens_[static_cast<size_t>(k)] = density_real(a);
  }
  const double quarter = cdf_.back();
  if (std::abs(quarter - 0.25) > 1e-6)
    throw QuadratureError("RealEquilibrium: mass of (0,1) is not 1/4");
}

namespace {

// Cubic Hermite on [0,1] with values f0,f1 and slopes d0,d1 (unit cell).
double hermite(double f0, double f1, double d0, double d1, double s) {
  const double s2 = s * s, s3 = s2 * s;
  return f0 * (2 * s3 - 3 * s2 + 1) + d0 * (s3 - 2 * s2 + s) + f1 * (-2 * s3 + 3 * s2) +
         d1 * (s3 - s2);
}

double hermite_deriv(double f0, double f1, double d0, double d1, double s) {
  const double s2 = s * s;
  return f0 * (6 * s2 - 6 * s) + d0 * (3 * s2 - 4 * s + 1) + f1 * (-6 * s2 + 6 * s) +
         d1 * (3 * s2 - 2 * s);
}

}  // namespace

double RealEquilibrium::cdf01(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return cdf_.back();
  const double h = 1.0 / m_;
  int k = std::min(static_cast<int>(x * m_), m_ - 1);
  const double a = k * h;
  if (k + 1 == m_) {
    // Last cell: integrate directly against the singular density.
    return cdf_[static_cast<size_t>(k)] +
           integrate_ts([](double y) { return density_real(y); }, a, x, tol_, "cdf01");
  }
  const double s = (x - a) / h;
  return hermite(cdf_[static_cast<size_t>(k)], cdf_[static_cast<size_t>(k) + 1],
                 h * dens_[static_cast<size_t>(k)],
                 h * (k + 1 < m_ ? dens_[static_cast<size_t>(k) + 1] : dens_.back()), s);
}

double RealEquilibrium::invert01(double t) const {
  const double total = cdf_.back();
  if (t <= 0.0) return 0.0;
  if (t >= total) return 1.0;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), t);
  int k = std::max(0, static_cast<int>(it - cdf_.begin()) - 1);
  if (k >= m_) k = m_ - 1;
  const double h = 1.0 / m_;
  const double a = k * h;
  const double f0 = cdf_[static_cast<size_t>(k)], f1 = cdf_[static_cast<size_t>(k) + 1];
  if (k + 1 == m_) {
    // Bisection against the true CDF in the singular end cell.
    double lo = a, hi = 1.0;
    for (int i = 0; i < 60 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      (cdf01(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }
  const double d0 = h * dens_[static_cast<size_t>(k)];
  const double d1 = h * dens_[static_cast<size_t>(k) + 1 < static_cast<size_t>(m_)
                                  ? static_cast<size_t>(k) + 1
                                  : static_cast<size_t>(m_) - 1];
  // Newton on the monotone cubic, then one correction against the density.
  double s = (t - f0) / std::max(f1 - f0, 1e-300);
  for (int i = 0; i < 3; ++i) {
    const double g = hermite(f0, f1, d0, d1, s) - t;
    const double gp = hermite_deriv(f0, f1, d0, d1, s);
    if (gp > 0.0) s -= g / gp;
    s = std::clamp(s, 0.0, 1.0);
  }
  double x = a + s * h;
  const double rho = density_real(x);
  if (rho > 0.0) x -= (hermite(f0, f1, d0, d1, s) - t) / rho;
  return std::clamp(x, a, a + h);
}

RealEquilibrium::Decision RealEquilibrium::draw_decision(RngStream& rng) const {
  const double u = rng.next_double();
  const bool negate = rng.next_bool();
  const bool invert = rng.next_bool();
  return {invert01(u * quarter_mass()), negate, invert};
}

double RealEquilibrium::sample_affine(RngStream& rng) const {
  const Decision d = draw_decision(rng);
  double v = d.x01;
  if (d.invert) v = v == 0.0 ? kInfD : 1.0 / v;
  return d.negate ? -v : v;
}

metric::ProjectivePoint RealEquilibrium::sample(RngStream& rng) const {
  const Decision d = draw_decision(rng);
  const double v = d.negate ? -d.x01 : d.x01;
  // Inversion is a coordinate swap, exact at the projective level.
  return d.invert ? metric::ProjectivePoint::complex_pair(1.0, v)
                  : metric::ProjectivePoint::complex_pair(v, 1.0);
}

// ---------------------------------------------------------------------------
// PadicEquilibrium

PadicEquilibrium::PadicEquilibrium(long long p, long long precision) : p_(p), prec_(precision) {
  if (!is_prime_small(p)) throw std::invalid_argument("PadicEquilibrium: p must be prime");
  if (precision < 1) throw std::invalid_argument("PadicEquilibrium: precision >= 1 required");
}

metric::ProjectivePoint PadicEquilibrium::sample(RngStream& rng) const {
  const auto up = static_cast<std::uint64_t>(p_);
  while (true) {
    BigInt u = 0, v = 0;
    // Digits drawn low-to-high, assembled as u = sum d_i p^i.
    BigInt scale = 1;
    for (long long i = 0; i < prec_; ++i) {
      u += scale * static_cast<long long>(rng.next_below(up));
      scale *= p_;
    }
    scale = 1;
    for (long long i = 0; i < prec_; ++i) {
      v += scale * static_cast<long long>(rng.next_below(up));
      scale *= p_;
    }
    if (u % p_ == 0 && v % p_ == 0) continue;  // not a unimodular pair
    return metric::ProjectivePoint::padic_pair(padic::PadicNumber::from_residue(p_, u, prec_),
                                               padic::PadicNumber::from_residue(p_, v, prec_));
  }
}

// ---------------------------------------------------------------------------
// EquilibriumSampler

EquilibriumSampler EquilibriumSampler::real(int table_size, double tol) {
  EquilibriumSampler s;
  s.real_ = std::make_shared<const RealEquilibrium>(table_size, tol);
  return s;
}

EquilibriumSampler EquilibriumSampler::real_shared(std::shared_ptr<const RealEquilibrium> eq) {
  EquilibriumSampler s;
  s.real_ = std::move(eq);
  return s;
}

EquilibriumSampler EquilibriumSampler::padic(long long p, long long precision) {
  EquilibriumSampler s;
  s.padic_ = std::make_shared<const PadicEquilibrium>(p, precision);
  return s;
}

metric::ProjectivePoint EquilibriumSampler::sample(RngStream& rng) const {
  return real_ ? real_->sample(rng) : padic_->sample(rng);
}

metric::PointSampler EquilibriumSampler::drawer() const {
  if (real_) {
    auto eq = real_;
    return [eq](RngStream& rng) { return eq->sample(rng); };
  }
  auto eq = padic_;
  return [eq](RngStream& rng) { return eq->sample(rng); };
}

double EquilibriumSampler::target_energy() const {
  return real_ ? minimal_energy_real() : minimal_energy_padic(padic_->prime());
}

metric::FieldContext EquilibriumSampler::context() const {
  return real_ ? metric::FieldContext::arch() : metric::FieldContext::padic(padic_->prime());
}

}  // namespace p1energy::equilibrium
