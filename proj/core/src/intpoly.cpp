#include "p1energy/intpoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace p1energy {

namespace {

const BigInt kZero = 0;

void trim(std::vector<BigInt>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(c_); }

IntPolynomial IntPolynomial::parse(const std::string& csv) {
  std::vector<BigInt> c;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string cleaned;
    for (char ch : tok)  // tolerate JSON-array brackets and whitespace
      if (!isspace(static_cast<unsigned char>(ch)) && ch != '[' && ch != ']')
        cleaned.push_back(ch);
    if (cleaned.empty()) throw std::invalid_argument("empty coefficient in \"" + csv + "\"");
    c.emplace_back(cleaned);
  }
  if (c.empty()) throw std::invalid_argument("no coefficients in \"" + csv + "\"");
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_ll(std::initializer_list<long long> coeffs) {
  std::vector<BigInt> c;
  for (long long x : coeffs) c.emplace_back(x);
  return IntPolynomial(std::move(c));
}

const BigInt& IntPolynomial::coeff(long long i) const {
  if (i < 0 || i >= static_cast<long long>(c_.size())) return kZero;
  return c_[static_cast<size_t>(i)];
}

const BigInt& IntPolynomial::leading() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

BigInt IntPolynomial::eval(const BigInt& x) const {
  BigInt r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

BigRat IntPolynomial::eval(const BigRat& x) const {
  BigRat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + BigRat(*it);
  return r;
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<BigInt> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long long>(i));
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::negate() const {
  std::vector<BigInt> d(c_);
  for (auto& x : d) x = -x;
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::multiply(const IntPolynomial& g) const {
  if (is_zero() || g.is_zero()) return IntPolynomial();
  std::vector<BigInt> d(c_.size() + g.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < g.c_.size(); ++j) d[i + j] += c_[i] * g.c_[j];
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::add(const IntPolynomial& g) const {
  std::vector<BigInt> d(std::max(c_.size(), g.c_.size()), BigInt(0));
  for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
  for (size_t i = 0; i < g.c_.size(); ++i) d[i] += g.c_[i];
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<BigInt> d(c_.rbegin(), c_.rend());
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::compose_linear(const BigInt& a, const BigInt& b) const {
  // Horner: f(a + b x) = c_n (a + b x) ... accumulated as a polynomial.
  std::vector<BigInt> acc;  // constant-first
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    // acc = acc * (a + b x) + *it
    std::vector<BigInt> next(acc.size() + 1, BigInt(0));
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * a;
      next[i + 1] += acc[i] * b;
    }
    if (next.empty()) next.push_back(BigInt(0));
    next[0] += *it;
    acc = std::move(next);
  }
  return IntPolynomial(std::move(acc));
}

IntPolynomial IntPolynomial::divide_exact(const BigInt& d) const {
  if (d == 0) throw std::invalid_argument("divide_exact by zero");
  std::vector<BigInt> out(c_);
  for (auto& x : out) {
    if (x % d != 0) throw std::invalid_argument("divide_exact: not divisible");
    x /= d;
  }
  return IntPolynomial(std::move(out));
}

BigInt IntPolynomial::content() const {
  BigInt g = 0;
  for (const auto& x : c_) g = gcd(g, x);
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return *this;
  BigInt g = content();
  if (leading() < 0) g = -g;
  return divide_exact(g);
}

bool IntPolynomial::is_squarefree() const {
  if (is_zero()) return false;
  if (degree() <= 1) return true;
  return poly_gcd(*this, derivative()).degree() == 0;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long long i = degree(); i >= 0; --i) {
    const BigInt& a = coeff(i);
    if (a == 0) continue;
    BigInt mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
      first = false;
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.str();
    if (i >= 1) {
      if (mag != 1) os << "*";
      os << "x";
      if (i >= 2) os << "^" << i;
    }
  }
  return os.str();
}

std::string IntPolynomial::coeff_csv() const {
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << c_[i].str();
  }
  return os.str();
}

namespace {

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g, over Z.
IntPolynomial pseudo_rem(const IntPolynomial& f, const IntPolynomial& g) {
  std::vector<BigInt> r(f.coeffs());
  const auto& gc = g.coeffs();
  const BigInt& glead = gc.back();
  long long dg = g.degree();
  while (static_cast<long long>(r.size()) - 1 >= dg) {
    long long dr = static_cast<long long>(r.size()) - 1;
    BigInt top = r.back();
    for (auto& x : r) x *= glead;
    for (long long i = 0; i <= dg; ++i)
      r[static_cast<size_t>(dr - dg + i)] -= top * gc[static_cast<size_t>(i)];
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.empty()) break;
  }
  return IntPolynomial(std::move(r));
}

}  // namespace

IntPolynomial poly_gcd(const IntPolynomial& f, const IntPolynomial& g) {
  IntPolynomial a = f.primitive_part();
  IntPolynomial b = g.primitive_part();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPolynomial r = pseudo_rem(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return a.primitive_part();
}

namespace {

using Int128 = __int128;

// Bareiss fraction-free elimination; pivots are subresultant minors, so the
// arithmetic stays integral throughout. Returns the determinant.
BigInt bareiss_det_big(std::vector<std::vector<BigInt>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

bool bareiss_det_small(std::vector<std::vector<long long>> m, Int128* out) {
  const size_t n = m.size();
  if (n == 0) {
    *out = 1;
    return true;
  }
  // Entry magnitudes are checked against a cap at every step so that the
  // (a*d - b*c)/prev update cannot overflow Int128.
  const Int128 cap = (Int128(1) << 62);
  std::vector<std::vector<Int128>> w(n, std::vector<Int128>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) w[i][j] = m[i][j];
  Int128 prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (w[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && w[piv][k] == 0) ++piv;
      if (piv == n) {
        *out = 0;
        return true;
      }
      std::swap(w[k], w[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int128 a = w[i][j], b = w[i][k], c = w[k][j], d = w[k][k];
        if ((a > cap || a < -cap) || (b > cap || b < -cap) || (c > cap || c < -cap) ||
            (d > cap || d < -cap))
          return false;
        w[i][j] = (a * d - b * c) / prev;
      }
    prev = w[k][k];
    if (prev > cap || prev < -cap) return false;
  }
  *out = sign > 0 ? w[n - 1][n - 1] : -w[n - 1][n - 1];
  return true;
}

}  // namespace

BigInt resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const long long m = f.degree(), n = g.degree();
  if (m == 0) return pow(f.leading(), static_cast<unsigned>(n));
  if (n == 0) return pow(g.leading(), static_cast<unsigned>(m));
  const size_t dim = static_cast<size_t>(m + n);

  // Small fast path: coefficients fitting comfortably in 64 bits go through
  // an Int128 Bareiss with overflow guards; anything else uses BigInt.
  bool small = true;
  const long long small_cap = 1LL << 40;
  for (const auto& c : f.coeffs())
    if (abs(c) > small_cap) small = false;
  for (const auto& c : g.coeffs())
    if (abs(c) > small_cap) small = false;
  if (small && dim <= 24) {
    std::vector<std::vector<long long>> s(dim, std::vector<long long>(dim, 0));
    for (long long i = 0; i < n; ++i)
      for (long long j = 0; j <= m; ++j)
        s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] =
            static_cast<long long>(f.coeff(m - j));
    for (long long i = 0; i < m; ++i)
      for (long long j = 0; j <= n; ++j)
        s[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] =
            static_cast<long long>(g.coeff(n - j));
    Int128 det;
    if (bareiss_det_small(std::move(s), &det)) {
      bool neg = det < 0;
      unsigned __int128 u = neg ? static_cast<unsigned __int128>(-det)
                                : static_cast<unsigned __int128>(det);
      BigInt r = static_cast<std::uint64_t>(u >> 64);
      r <<= 64;
      r += static_cast<std::uint64_t>(u);
      return neg ? -r : r;
    }
  }

  std::vector<std::vector<BigInt>> s(dim, std::vector<BigInt>(dim, BigInt(0)));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j <= m; ++j)
      s[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f.coeff(m - j);
  for (long long i = 0; i < m; ++i)
    for (long long j = 0; j <= n; ++j)
      s[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = g.coeff(n - j);
  return bareiss_det_big(std::move(s));
}

BigInt discriminant(const IntPolynomial& f) {
  const long long n = f.degree();
  if (n < 1) throw std::invalid_argument("discriminant: degree >= 1 required");
  if (n == 1) return 1;
  BigInt res = resultant(f, f.derivative());
  BigInt d = res / f.leading();
  if (d * f.leading() != res) throw std::logic_error("discriminant: non-exact division");
  const long long s = (n * (n - 1) / 2) % 2;
  return s ? -d : d;
}

}  // namespace p1energy
