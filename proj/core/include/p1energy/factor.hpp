#pragma once

#include <utility>
#include <vector>

#include "p1energy/bigint.hpp"

namespace p1energy {

// Miller-Rabin, deterministic for n < 3.3e24 (first twelve prime bases).
bool is_probable_prime(const BigInt& n);

// Prime factorization of |n| (n != 0): trial division below trial_bound,
// then Brent's rho with Miller-Rabin certificates on what remains. Factors
// are returned sorted with multiplicities.
std::vector<std::pair<BigInt, int>> factorize(const BigInt& n, long long trial_bound = 100000);

}  // namespace p1energy
