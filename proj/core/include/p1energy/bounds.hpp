#pragma once

#include <string>
#include <vector>

#include "p1energy/bigint.hpp"

namespace p1energy::bounds {

// A place of the base field K together with the prescribed Galois splitting
// data of L_v/K_v. Archimedean places carry only the weight N_v.
struct PlaceSpec {
  bool archimedean = false;
  long long p = 0;     // rational prime below v (finite places)
  BigRat weight = 1;   // N_v = [K_v : Q_v] / [K : Q], in (0, 1]
  BigInt q = 0;        // residue field size of K_v, a power of p
  long long e = 1;     // ramification degree of L_v/K_v
  long long f = 1;     // inertial degree of L_v/K_v

  static PlaceSpec arch(BigRat weight = 1);
  static PlaceSpec finite(long long p, BigRat weight = 1, long long e = 1, long long f = 1,
                          BigInt q = 0);  // q defaults to p
  void validate() const;
};

struct BoundTerm {
  PlaceSpec place;
  double value = 0.0;
  // Exact symbolic form: value = coeff * log(p) at finite places and
  // coeff * zeta(3)/pi^2 at archimedean ones.
  BigRat coeff = 0;
  std::string symbolic() const;
};

struct BoundReport {
  std::vector<BoundTerm> terms;
  double total = 0.0;
};

// liminf h >= sum over finite v of (N_v/2) q^f log p / (e (q^{2f} - 1))
//           + sum over archimedean v of N_v 7 zeta(3) / (4 pi^2).
BoundReport general_bound(const std::vector<PlaceSpec>& places);

// (1/2) sum log p / (p + 1): the elementary counting bound.
double bombieri_zannier_bound(const std::vector<long long>& primes);

// (1/2) log((1 + sqrt 5)/2): the totally real bound.
double schinzel_bound();

// sum log p / (p - 1): upper bound for the totally p-adic liminf.
double totp_upper_bound(const std::vector<long long>& primes);

// (1/2) sum log p / (p - 1): the algebraic-integer variant, for comparison.
double integer_bound(const std::vector<long long>& primes);

}  // namespace p1energy::bounds
