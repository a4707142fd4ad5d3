#include "p1energy/padic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

namespace p1energy::padic {

namespace {

constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

void require_prime(long long p) {
  if (!is_prime_small(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
}

}  // namespace

std::optional<long long> ord_p(const BigRat& x, long long p) {
  require_prime(p);
  if (x == 0) return std::nullopt;
  auto num = ord_of(numerator(x), p);
  auto den = ord_of(denominator(x), p);
  return *num - *den;
}

// ---------------------------------------------------------------------------
// PadicNumber

PadicNumber PadicNumber::zero(long long p) {
  require_prime(p);
  return PadicNumber(p, State::kExact);
}

PadicNumber PadicNumber::one(long long p) { return from_integer(p, 1); }

PadicNumber PadicNumber::from_integer(long long p, const BigInt& n) {
  return from_rational(p, BigRat(n));
}

PadicNumber PadicNumber::from_rational(long long p, const BigRat& x) {
  require_prime(p);
  PadicNumber r(p, State::kExact);
  r.q_ = x;
  return r;
}

PadicNumber PadicNumber::from_unit_val(long long p, BigInt unit, long long val,
                                       long long rel_prec) {
  require_prime(p);
  if (rel_prec < 1) throw std::invalid_argument("from_unit_val: rel_prec must be >= 1");
  unit = mod_reduce(unit, pow_big(p, rel_prec));
  if (unit == 0 || unit % p == 0)
    throw std::invalid_argument("from_unit_val: unit must be coprime to p");
  PadicNumber r(p, State::kFinite);
  r.unit_ = std::move(unit);
  r.val_ = val;
  r.rel_prec_ = rel_prec;
  return r;
}

PadicNumber PadicNumber::from_residue(long long p, const BigInt& value, long long abs_prec) {
  require_prime(p);
  if (abs_prec < 1) throw std::invalid_argument("from_residue: abs_prec must be >= 1");
  BigInt v = mod_reduce(value, pow_big(p, abs_prec));
  if (v == 0) return zero_to_precision(p, abs_prec);
  long long k = *ord_of(v, p);
  return from_unit_val(p, v / pow_big(p, k), k, abs_prec - k);
}

PadicNumber PadicNumber::zero_to_precision(long long p, long long abs_prec) {
  require_prime(p);
  PadicNumber r(p, State::kBall);
  r.val_ = abs_prec;
  return r;
}

const BigRat& PadicNumber::rational() const {
  if (state_ != State::kExact) throw std::logic_error("rational(): not an exact value");
  return q_;
}

std::optional<long long> PadicNumber::valuation() const {
  switch (state_) {
    case State::kExact:
      return ord_p(q_, p_);
    case State::kFinite:
      return val_;
    case State::kBall:
      throw PrecisionExhausted("valuation not certified: value is O(p^" + std::to_string(val_) +
                               ")");
  }
  return std::nullopt;
}

long long PadicNumber::certified_val() const {
  auto v = valuation();
  if (!v) throw std::logic_error("certified_val on exact zero");
  return *v;
}

long long PadicNumber::val_lower_bound() const {
  if (state_ == State::kBall) return val_;
  if (is_exact_zero()) return kInf;
  return certified_val();
}

const BigInt& PadicNumber::unit() const {
  if (state_ != State::kFinite) throw std::logic_error("unit(): finite-precision values only");
  return unit_;
}

long long PadicNumber::rel_prec() const { return state_ == State::kFinite ? rel_prec_ : kInf; }

long long PadicNumber::abs_prec() const {
  switch (state_) {
    case State::kExact:
      return kInf;
    case State::kFinite:
      return val_ + rel_prec_;
    case State::kBall:
      return val_;
  }
  return 0;
}

double PadicNumber::abs() const {
  if (is_exact_zero()) return 0.0;
  if (state_ == State::kBall)
    throw PrecisionExhausted("abs not certified: value is O(p^" + std::to_string(val_) + ")");
  return std::pow(static_cast<double>(p_), static_cast<double>(-certified_val()));
}

BigInt PadicNumber::exact_unit_mod(long long rel) const {
  // unit of a nonzero exact value: (num / p^v_num) * inv(den / p^v_den)
  BigInt num = numerator(q_), den = denominator(q_);
  long long vn = *ord_of(num, p_), vd = *ord_of(den, p_);
  num /= pow_big(p_, vn);
  den /= pow_big(p_, vd);
  BigInt m = pow_big(p_, rel);
  return mod_reduce(num * mod_inverse(den, m), m);
}

PadicNumber PadicNumber::finite_view(long long abs_prec) const {
  // Exact value squeezed to a finite absolute precision.
  if (state_ != State::kExact) throw std::logic_error("finite_view: exact values only");
  if (q_ == 0 || certified_val() >= abs_prec) return zero_to_precision(p_, abs_prec);
  const long long v = certified_val();
  return from_unit_val(p_, exact_unit_mod(abs_prec - v), v, abs_prec - v);
}

PadicNumber PadicNumber::negated() const {
  switch (state_) {
    case State::kExact: {
      return from_rational(p_, -q_);
    }
    case State::kFinite: {
      BigInt m = pow_big(p_, rel_prec_);
      return from_unit_val(p_, mod_reduce(-unit_, m), val_, rel_prec_);
    }
    case State::kBall:
      return *this;
  }
  return *this;
}

PadicNumber PadicNumber::mul(const PadicNumber& o) const {
  if (p_ != o.p_) throw std::invalid_argument("mul: prime mismatch");
  if (is_exact_zero() || o.is_exact_zero()) return zero(p_);
  if (state_ == State::kExact && o.state_ == State::kExact)
    return from_rational(p_, q_ * o.q_);
  if (state_ == State::kBall || o.state_ == State::kBall)
    return zero_to_precision(p_, val_lower_bound() + o.val_lower_bound());
  // At least one finite, the other finite or exact nonzero.
  const long long rel = std::min(rel_prec(), o.rel_prec());
  BigInt m = pow_big(p_, rel);
  BigInt ua = state_ == State::kExact ? exact_unit_mod(rel) : unit_;
  BigInt ub = o.state_ == State::kExact ? o.exact_unit_mod(rel) : o.unit_;
  return from_unit_val(p_, mod_reduce(ua * ub, m), certified_val() + o.certified_val(), rel);
}

PadicNumber PadicNumber::mul_integer(const BigInt& n) const {
  if (n == 0) return zero(p_);
  switch (state_) {
    case State::kExact:
      return from_rational(p_, q_ * BigRat(n));
    case State::kFinite: {
      long long k = *ord_of(n, p_);
      BigInt m = pow_big(p_, rel_prec_);
      return from_unit_val(p_, mod_reduce(unit_ * (n / pow_big(p_, k)), m), val_ + k, rel_prec_);
    }
    case State::kBall:
      return zero_to_precision(p_, val_ + *ord_of(n, p_));
  }
  return *this;
}

PadicNumber PadicNumber::shift(long long k) const {
  switch (state_) {
    case State::kExact: {
      if (q_ == 0) return *this;
      BigRat f = k >= 0 ? BigRat(pow_big(p_, k)) : BigRat(1, pow_big(p_, -k));
      return from_rational(p_, q_ * f);
    }
    case State::kFinite: {
      PadicNumber r = *this;
      r.val_ += k;
      return r;
    }
    case State::kBall:
      return zero_to_precision(p_, val_ + k);
  }
  return *this;
}

PadicNumber PadicNumber::add(const PadicNumber& o) const {
  if (p_ != o.p_) throw std::invalid_argument("add: prime mismatch");
  if (is_exact_zero()) return o;
  if (o.is_exact_zero()) return *this;
  if (state_ == State::kExact && o.state_ == State::kExact)
    return from_rational(p_, q_ + o.q_);
  const long long K = std::min(abs_prec(), o.abs_prec());  // finite here
  const PadicNumber a = state_ == State::kExact ? finite_view(K) : *this;
  const PadicNumber b = o.state_ == State::kExact ? o.finite_view(K) : o;
  if (a.state_ == State::kBall || b.state_ == State::kBall) {
    const PadicNumber& known = a.state_ == State::kBall ? b : a;
    if (known.state_ == State::kBall || known.val_ >= K) return zero_to_precision(p_, K);
    const long long rel = std::min(known.rel_prec_, K - known.val_);
    return from_unit_val(p_, known.unit_, known.val_, rel);
  }
  const long long mval = std::min(a.val_, b.val_);
  BigInt w = a.unit_ * pow_big(p_, a.val_ - mval) + b.unit_ * pow_big(p_, b.val_ - mval);
  w = mod_reduce(w, pow_big(p_, K - mval));
  if (w == 0) return zero_to_precision(p_, K);
  long long k = *ord_of(w, p_);
  return from_unit_val(p_, w / pow_big(p_, k), mval + k, K - mval - k);
}

PadicNumber PadicNumber::sub(const PadicNumber& o) const { return add(o.negated()); }

PadicNumber PadicNumber::div_unit(const PadicNumber& o) const {
  if (p_ != o.p_) throw std::invalid_argument("div_unit: prime mismatch");
  if (o.is_zeroish() || o.certified_val() != 0)
    throw std::invalid_argument("div_unit: divisor must be a certified unit");
  if (is_zeroish()) return *this;
  if (state_ == State::kExact && o.state_ == State::kExact)
    return from_rational(p_, q_ / o.q_);
  const long long rel = std::min(rel_prec(), o.rel_prec());
  BigInt m = pow_big(p_, rel);
  BigInt ua = state_ == State::kExact ? exact_unit_mod(rel) : unit_;
  BigInt ub = o.state_ == State::kExact ? o.exact_unit_mod(rel) : o.unit_;
  return from_unit_val(p_, mod_reduce(ua * mod_inverse(ub, m), m), certified_val(), rel);
}

BigInt PadicNumber::representative(long long k) const {
  if (k < 1) throw std::invalid_argument("representative: k >= 1 required");
  switch (state_) {
    case State::kExact: {
      if (q_ == 0) return 0;
      const long long v = certified_val();
      if (v < 0) throw std::invalid_argument("representative: negative valuation");
      if (v >= k) return 0;
      return mod_reduce(exact_unit_mod(k - v) * pow_big(p_, v), pow_big(p_, k));
    }
    case State::kFinite: {
      if (val_ < 0) throw std::invalid_argument("representative: negative valuation");
      if (abs_prec() < k) throw PrecisionExhausted("representative: insufficient precision");
      if (val_ >= k) return 0;
      return mod_reduce(unit_ * pow_big(p_, val_), pow_big(p_, k));
    }
    case State::kBall: {
      if (val_ < k)
        throw PrecisionExhausted("representative: ball O(p^" + std::to_string(val_) +
                                 ") too coarse for p^" + std::to_string(k));
      return 0;
    }
  }
  return 0;
}

bool PadicNumber::same_representation(const PadicNumber& a, const PadicNumber& b) {
  return !representation_less(a, b) && !representation_less(b, a);
}

bool PadicNumber::representation_less(const PadicNumber& a, const PadicNumber& b) {
  auto key = [](const PadicNumber& x) {
    // state rank, val/bound, rel, unit-or-num, den
    switch (x.state_) {
      case State::kBall:
        return std::tuple<int, long long, long long, BigInt, BigInt>(0, x.val_, 0, 0, 0);
      case State::kFinite:
        return std::tuple<int, long long, long long, BigInt, BigInt>(1, x.val_, x.rel_prec_,
                                                                     x.unit_, 0);
      case State::kExact:
        return std::tuple<int, long long, long long, BigInt, BigInt>(2, 0, 0, numerator(x.q_),
                                                                     denominator(x.q_));
    }
    return std::tuple<int, long long, long long, BigInt, BigInt>(3, 0, 0, 0, 0);
  };
  return key(a) < key(b);
}

std::string PadicNumber::to_string() const {
  std::ostringstream os;
  switch (state_) {
    case State::kExact: {
      os << numerator(q_).str();
      if (denominator(q_) != 1) os << "/" << denominator(q_).str();
      return os.str();
    }
    case State::kFinite:
      os << unit_.str() << "*" << p_ << "^" << val_;
      return os.str();
    case State::kBall:
      os << "O(" << p_ << "^" << val_ << ")";
      return os.str();
  }
  return os.str();
}

double padic_abs(const PadicNumber& x) { return x.abs(); }

// ---------------------------------------------------------------------------
// Newton polygon

std::vector<BigRat> NewtonPolygon::root_valuations() const {
  std::vector<BigRat> v;
  for (const auto& s : seg_)
    for (long long i = 0; i < s.length; ++i) v.push_back(-s.slope);
  return v;
}

BigInt NewtonPolygon::positive_part() const {
  BigRat total = 0;
  for (const auto& s : seg_)
    if (s.slope > 0) total += s.slope * s.length;
  if (denominator(total) != 1) throw std::logic_error("positive_part: non-integer rise");
  return numerator(total);
}

NewtonPolygon newton_polygon(const IntPolynomial& f, long long p) {
  require_prime(p);
  if (f.is_zero()) throw std::invalid_argument("newton_polygon: zero polynomial");
  struct Pt {
    long long x, y;
  };
  std::vector<Pt> pts;
  for (long long i = 0; i <= f.degree(); ++i) {
    const BigInt& c = f.coeff(i);
    if (c == 0) continue;
    pts.push_back({i, *ord_of(c, p)});
  }
  // Monotone lower hull; collinear middle points are merged.
  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // slope(a,b) >= slope(b,q) means b is not a strict lower vertex.
      if (static_cast<__int128>(b.y - a.y) * (q.x - b.x) >=
          static_cast<__int128>(q.y - b.y) * (b.x - a.x))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }
  std::vector<NewtonSegment> segs;
  for (size_t i = 1; i < hull.size(); ++i) {
    segs.push_back({BigRat(hull[i].y - hull[i - 1].y, hull[i].x - hull[i - 1].x),
                    hull[i].x - hull[i - 1].x});
  }
  return NewtonPolygon(std::move(segs));
}

// ---------------------------------------------------------------------------
// Root counting / lifting in Z_p

namespace {

std::vector<long long> coeffs_mod_p(const IntPolynomial& f, long long p) {
  std::vector<long long> c;
  c.reserve(static_cast<size_t>(f.degree()) + 1);
  for (long long i = 0; i <= f.degree(); ++i)
    c.push_back(static_cast<long long>(mod_reduce(f.coeff(i), p)));
  return c;
}

long long eval_mod_p(const std::vector<long long>& c, long long x, long long p) {
  long long r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = (r * x + *it) % p;
  return r;
}

// Strip the p-part of the content so the reduction mod p is nonzero.
IntPolynomial strip_p_content(const IntPolynomial& f, long long p) {
  long long m = kInf;
  for (long long i = 0; i <= f.degree(); ++i) {
    const BigInt& c = f.coeff(i);
    if (c == 0) continue;
    m = std::min(m, *ord_of(c, p));
    if (m == 0) return f;
  }
  return f.divide_exact(pow_big(p, m));
}

long long depth_cap(const IntPolynomial& f, long long p) {
  if (f.degree() < 2) return 1;
  auto d = ord_of(discriminant(f), p);
  if (!d) throw NotSquarefree("vanishing discriminant: polynomial is not squarefree");
  return *d + 1;
}

// Unique root of f in r0 + p Z_p (simple mod p), as a residue mod p^prec.
BigInt hensel_lift(const IntPolynomial& f, const IntPolynomial& fp, long long p, long long r0,
                   long long prec) {
  BigInt r = r0;
  long long k = 1;
  while (k < prec) {
    k = std::min(2 * k, prec);
    BigInt m = pow_big(p, k);
    BigInt d = mod_reduce(fp.eval(r), m);
    r = mod_reduce(r - f.eval(r) * mod_inverse(d, m), m);
  }
  return r;
}

struct RootWork {
  const long long p;
  const long long cap;
  bool want_roots;
  std::vector<BigInt> roots;
  long long count = 0;

  // Counts (and optionally lifts) the roots of the p-primitive f in Z_p;
  // roots are reported as base + scale * (residue mod p^prec).
  void run(const IntPolynomial& f, long long depth, const BigInt& base, const BigInt& scale,
           long long prec) {
    if (depth > cap)
      throw DepthExceeded("root recursion exceeded ord_p(disc)+1; input likely not squarefree");
    if (f.degree() < 1) return;
    IntPolynomial fp = f.derivative();
    auto fm = coeffs_mod_p(f, p);
    auto fpm = coeffs_mod_p(fp, p);
    for (long long r = 0; r < p; ++r) {
      if (eval_mod_p(fm, r, p) != 0) continue;
      if (eval_mod_p(fpm, r, p) != 0) {
        ++count;
        if (want_roots) {
          if (prec < 1) throw std::invalid_argument("roots_Zp: precision too small");
          roots.push_back(base + scale * hensel_lift(f, fp, p, r, prec));
        }
      } else {
        IntPolynomial g = strip_p_content(f.compose_linear(r, p), p);
        run(g, depth + 1, base + scale * r, scale * p, prec - 1);
      }
    }
  }
};

void require_squarefree(const IntPolynomial& f) {
  if (f.is_zero() || !f.is_squarefree())
    throw NotSquarefree("polynomial must be squarefree: " + f.to_string());
}

}  // namespace

long long count_roots_Zp(const IntPolynomial& f, long long p) {
  require_prime(p);
  require_squarefree(f);
  IntPolynomial g = strip_p_content(f, p);
  RootWork w{p, depth_cap(g, p), false, {}, 0};
  w.run(g, 0, 0, 1, 0);
  return w.count;
}

std::vector<BigInt> roots_Zp(const IntPolynomial& f, long long p, long long prec) {
  require_prime(p);
  require_squarefree(f);
  if (prec < 1) throw std::invalid_argument("roots_Zp: prec must be >= 1");
  IntPolynomial g = strip_p_content(f, p);
  RootWork w{p, depth_cap(g, p), true, {}, 0};
  w.run(g, 0, 0, 1, prec);
  BigInt m = pow_big(p, prec);
  for (auto& r : w.roots) r = mod_reduce(r, m);
  return w.roots;
}

long long count_roots_Qp(const IntPolynomial& f, long long p) {
  require_prime(p);
  require_squarefree(f);
  long long integral = count_roots_Zp(f, p);
  // Negative-valuation roots of f are the pZ_p roots of the reversal. The
  // reversal's constant term is lc(f), so 0 is never an exact root of rev:
  // every pZ_p root of rev is 1/alpha for a root alpha of f with |alpha| > 1.
  IntPolynomial rev = strip_p_content(f.reversed(), p);
  if (rev.degree() < 1) return integral;
  RootWork w{p, depth_cap(rev, p), false, {}, 0};
  IntPolynomial fp = rev.derivative();
  auto fm = coeffs_mod_p(rev, p);
  auto fpm = coeffs_mod_p(fp, p);
  if (eval_mod_p(fm, 0, p) == 0) {
    if (eval_mod_p(fpm, 0, p) != 0) {
      w.count = 1;
    } else {
      IntPolynomial g = strip_p_content(rev.compose_linear(0, p), p);
      w.run(g, 1, 0, 1, 0);
    }
  }
  return integral + w.count;
}

bool is_totally_split(const IntPolynomial& f, long long p) {
  if (f.degree() < 1) throw std::invalid_argument("is_totally_split: degree >= 1 required");
  return count_roots_Qp(f, p) == f.degree();
}

}  // namespace p1energy::padic
