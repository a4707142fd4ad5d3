#include "p1energy/heights.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "p1energy/factor.hpp"
#include "p1energy/padic.hpp"

namespace p1energy::heights {

namespace {

void require_squarefree_n(const IntPolynomial& f, long long min_degree, const char* who) {
  if (f.is_zero() || f.degree() < min_degree)
    throw std::invalid_argument(std::string(who) + ": degree >= " + std::to_string(min_degree) +
                                " required");
  if (!f.is_squarefree())
    throw padic::NotSquarefree(std::string(who) + ": squarefree polynomial required");
}

// Coefficient content is not a property of the root set; heights and
// discrepancies are functions of the conjugates, so they see the primitive
// part only (that is also what makes h = (1/2) sum D_v an identity).
IntPolynomial primitive(const IntPolynomial& f) { return f.primitive_part(); }

}  // namespace

// ---------------------------------------------------------------------------
// Sturm chains over exact rationals

long long sturm_real_roots(const IntPolynomial& f) {
  require_squarefree_n(f, 0, "sturm_real_roots");
  if (f.degree() < 1) return 0;
  using Poly = std::vector<BigRat>;  // constant first
  auto from_int = [](const IntPolynomial& g) {
    Poly c(g.coeffs().size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = BigRat(g.coeffs()[i]);
    return c;
  };
  auto trim = [](Poly& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  };
  auto normalize = [&](Poly& c) {
    // positive scalar normalization keeps the coefficients small
    BigRat m = 0;
    for (const auto& x : c) m = std::max(m, static_cast<BigRat>(abs(x)));
    if (m != 0)
      for (auto& x : c) x /= m;
  };
  auto rem = [&](Poly a, const Poly& b) {
    while (a.size() >= b.size() && !a.empty()) {
      BigRat q = a.back() / b.back();
      const size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
      trim(a);
      if (a.size() >= b.size() && a.size() > 0 && a.back() == 0) trim(a);
    }
    return a;
  };

  std::vector<Poly> chain;
  chain.push_back(from_int(f));
  chain.push_back(from_int(f.derivative()));
  while (!chain.back().empty() && chain.back().size() > 1) {
    Poly r = rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    normalize(r);
    chain.push_back(std::move(r));
  }

  auto variations = [&](int at_plus_inf) {
    int count = 0, last = 0;
    for (const auto& c : chain) {
      if (c.empty()) continue;
      int s = c.back() > 0 ? 1 : -1;
      if (!at_plus_inf && (c.size() - 1) % 2 == 1) s = -s;  // parity flip at -inf
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return variations(0) - variations(1);
}

bool is_totally_real(const IntPolynomial& f) {
  if (f.degree() < 1) throw std::invalid_argument("is_totally_real: degree >= 1 required");
  return sturm_real_roots(f) == f.degree();
}

// ---------------------------------------------------------------------------
// Heights and local discrepancies

double weil_height(const IntPolynomial& f_in) {
  require_squarefree_n(f_in, 1, "weil_height");
  const IntPolynomial f = primitive(f_in);
  const auto roots = complex_roots_ld(f);
  long double s = std::log(std::abs(f.leading().convert_to<long double>()));
  for (const auto& r : roots) {
    const long double m = std::abs(r);
    if (m > 1.0L) s += std::log(m);
  }
  return static_cast<double>(s / static_cast<long double>(f.degree()));
}

LocalDiscrepancy local_discrepancy_arch(const IntPolynomial& f_in) {
  require_squarefree_n(f_in, 2, "local_discrepancy_arch");
  const IntPolynomial f = primitive(f_in);
  const auto roots = complex_roots_ld(f);
  const long double n = static_cast<long double>(roots.size());
  long double pair_sum = 0.0L;  // over unordered pairs, -log|a_i - a_j|
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      pair_sum -= std::log(std::abs(roots[i] - roots[j]));
  long double logplus = 0.0L;
  for (const auto& r : roots) {
    const long double m = std::abs(r);
    if (m > 1.0L) logplus += std::log(m);
  }
  const long double value = 2.0L * pair_sum / (n * (n - 1.0L)) + 2.0L * logplus / n;
  return {true, 0, static_cast<double>(value), 0};
}

LocalDiscrepancy local_discrepancy_padic(const IntPolynomial& f_in, long long p) {
  require_squarefree_n(f_in, 2, "local_discrepancy_padic");
  const IntPolynomial f = primitive(f_in);
  const long long n = f.degree();
  const BigInt disc = discriminant(f);
  auto vd = ord_of(disc, p);
  if (!vd) throw padic::NotSquarefree("local_discrepancy_padic: zero discriminant");
  const long long va = *ord_of(f.leading(), p);
  // Pair term: -log prod |a_i - a_j|_p = (ord_p disc - (2n-2) ord_p lc) log p,
  // exact via |disc / lc^(2n-2)|_p; log+ term from the Newton polygon.
  const BigInt s_p = padic::newton_polygon(f, p).positive_part();
  BigRat coeff(*vd - (2 * n - 2) * va + (2 * n - 2) * s_p, BigInt(n) * (n - 1));
  return {false, p, coeff.convert_to<double>() * std::log(static_cast<double>(p)), coeff};
}

std::vector<LocalDiscrepancy> all_local_discrepancies(const IntPolynomial& f_in) {
  require_squarefree_n(f_in, 2, "all_local_discrepancies");
  const IntPolynomial f = primitive(f_in);
  std::vector<LocalDiscrepancy> out;
  out.push_back(local_discrepancy_arch(f));
  std::set<long long> primes;
  for (const auto& [q, e] : factorize(f.leading() * discriminant(f))) {
    (void)e;
    // Everything here is desk scale; a prime beyond long long would mean the
    // factorization itself is wrong.
    primes.insert(q.convert_to<long long>());
  }
  for (long long p : primes) out.push_back(local_discrepancy_padic(f, p));
  return out;
}

double verify_product_formula(const IntPolynomial& f) {
  const auto locals = all_local_discrepancies(f);
  double sum = 0.0;
  for (const auto& d : locals) sum += d.value;
  return 2.0 * weil_height(f) - sum;
}

// ---------------------------------------------------------------------------
// Hensel-lifted conjugates on P^1(Q_p)

std::vector<metric::ProjectivePoint> padic_conjugates(const IntPolynomial& f_in, long long p,
                                                      long long extra_digits) {
  require_squarefree_n(f_in, 1, "padic_conjugates");
  const IntPolynomial f = primitive(f_in);
  if (!padic::is_totally_split(f, p))
    throw std::invalid_argument("padic_conjugates: polynomial is not totally split at " +
                                std::to_string(p));
  auto vd = ord_of(discriminant(f), p);
  const long long prec = (vd ? *vd : 0) + std::max<long long>(extra_digits, 8);

  std::vector<metric::ProjectivePoint> pts;
  for (const BigInt& r : padic::roots_Zp(f, p, prec)) {
    if (r == 0 && f.coeff(0) == 0) {
      pts.push_back(metric::ProjectivePoint::padic_affine(p, BigRat(0)));
    } else {
      pts.push_back(metric::ProjectivePoint::padic_pair(
          padic::PadicNumber::from_residue(p, r, prec), padic::PadicNumber::one(p)));
    }
  }
  // Negative-valuation roots via the reversal; gamma = 1/alpha in pZ_p.
  IntPolynomial rev = f.reversed();
  if (rev.degree() >= 1) {
    auto vrd = ord_of(discriminant(rev), p);
    const long long rprec = (vrd ? *vrd : 0) + std::max<long long>(extra_digits, 8);
    for (const BigInt& g : padic::roots_Zp(rev, p, rprec)) {
      if (mod_reduce(g, p) != 0) continue;  // unit roots already counted on f's side
      pts.push_back(metric::ProjectivePoint::padic_pair(
          padic::PadicNumber::one(p), padic::PadicNumber::from_residue(p, g, rprec)));
    }
  }
  if (static_cast<long long>(pts.size()) != f.degree())
    throw std::logic_error("padic_conjugates: conjugate count mismatch");
  return pts;
}

std::string SplittingConditions::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (long long p : primes) {
    if (!first) os << ",";
    os << p;
    first = false;
  }
  if (archimedean) os << (first ? "inf" : ",inf");
  os << "}";
  return os.str();
}

}  // namespace p1energy::heights
