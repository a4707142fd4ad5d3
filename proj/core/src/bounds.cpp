#include "p1energy/bounds.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "p1energy/equilibrium.hpp"

namespace p1energy::bounds {

PlaceSpec PlaceSpec::arch(BigRat weight) {
  PlaceSpec s;
  s.archimedean = true;
  s.weight = std::move(weight);
  return s;
}

PlaceSpec PlaceSpec::finite(long long p, BigRat weight, long long e, long long f, BigInt q) {
  PlaceSpec s;
  s.archimedean = false;
  s.p = p;
  s.weight = std::move(weight);
  s.e = e;
  s.f = f;
  s.q = q == 0 ? BigInt(p) : std::move(q);
  s.validate();
  return s;
}

void PlaceSpec::validate() const {
  if (weight <= 0 || weight > 1)
    throw std::invalid_argument("PlaceSpec: weight N_v must lie in (0, 1]");
  if (archimedean) return;
  if (!is_prime_small(p)) throw std::invalid_argument("PlaceSpec: p must be prime");
  if (e < 1 || f < 1) throw std::invalid_argument("PlaceSpec: e, f >= 1 required");
  if (!is_power_of(q, p))
    throw std::invalid_argument("PlaceSpec: q must be a power of p");
}

std::string BoundTerm::symbolic() const {
  std::ostringstream os;
  if (place.archimedean) {
    os << coeff << " * zeta(3)/pi^2";
  } else {
    os << coeff << " * log " << place.p;
  }
  return os.str();
}

BoundReport general_bound(const std::vector<PlaceSpec>& places) {
  if (places.empty())
    throw std::invalid_argument("general_bound: the place set S must be nonempty");
  // Weights of the places above one rational place sum to at most 1.
  std::map<long long, BigRat> weight_above;  // key 0 = archimedean
  for (const auto& v : places) {
    v.validate();
    BigRat& w = weight_above[v.archimedean ? 0 : v.p];
    w += v.weight;
    if (w > 1)
      throw std::invalid_argument("general_bound: weights above one rational place exceed 1");
  }
  BoundReport report;
  for (const auto& v : places) {
    BoundTerm term;
    term.place = v;
    if (v.archimedean) {
      // N_v * 7 zeta(3) / (4 pi^2)
      term.coeff = v.weight * BigRat(7, 4);
      term.value = v.weight.convert_to<double>() * 7.0 * equilibrium::zeta3() /
                   (4.0 * M_PI * M_PI);
    } else {
      // (N_v / 2) * q^f log p / (e (q^{2f} - 1)), with q^f exact.
      const BigInt qf = pow(v.q, static_cast<unsigned>(v.f));
      term.coeff = v.weight * BigRat(qf, 2 * v.e * (qf * qf - 1));
      term.value = term.coeff.convert_to<double>() * std::log(static_cast<double>(v.p));
    }
    report.total += term.value;
    report.terms.push_back(std::move(term));
  }
  return report;
}

namespace {

void require_finite_primes(const std::vector<long long>& primes, const char* who) {
  if (primes.empty()) throw std::invalid_argument(std::string(who) + ": nonempty prime set");
  for (long long p : primes)
    if (!is_prime_small(p))
      throw std::invalid_argument(std::string(who) + ": finite rational primes only");
}

}  // namespace

double bombieri_zannier_bound(const std::vector<long long>& primes) {
  require_finite_primes(primes, "bombieri_zannier_bound");
  double s = 0.0;
  for (long long p : primes) s += std::log(static_cast<double>(p)) / (p + 1.0);
  return s / 2.0;
}

double schinzel_bound() { return 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0); }

double totp_upper_bound(const std::vector<long long>& primes) {
  require_finite_primes(primes, "totp_upper_bound");
  double s = 0.0;
  for (long long p : primes) s += std::log(static_cast<double>(p)) / (p - 1.0);
  return s;
}

double integer_bound(const std::vector<long long>& primes) {
  require_finite_primes(primes, "integer_bound");
  return totp_upper_bound(primes) / 2.0;
}

}  // namespace p1energy::bounds
