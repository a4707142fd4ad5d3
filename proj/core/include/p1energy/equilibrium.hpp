#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "p1energy/bigint.hpp"
#include "p1energy/metric.hpp"
#include "p1energy/rng.hpp"

namespace p1energy::equilibrium {

struct QuadratureError : std::runtime_error {
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

// zeta(3) by direct summation, tail bracketed by the x^-3 integral so the
// enclosure is below 1e-16.
double zeta3();

// 7 zeta(3) / (2 pi^2) = 0.426278...
double minimal_energy_real();
// Same constant as (4/pi^2) sum_{n>=0} (2n+1)^-3.
double minimal_energy_real_series();

// q log q / (q^2 - 1).
double minimal_energy_padic(long long q);
// Same value via ((q-1) log q / (q+1)) sum_{n>=1} n q^-n.
double minimal_energy_padic_series(long long q);

// Density of mu_R: (1/(pi^2 x)) log|(x+1)/(x-1)|, extended by continuity at
// x = 0; throws std::domain_error at the integrable singularities x = +-1.
double density_real(double x);

// mu_R([a,b]) by tanh-sinh quadrature with the evenness and x -> 1/x
// symmetries folding everything onto (0,1); infinite endpoints allowed.
double real_mass(double a, double b, double tol = 1e-10);

// p_mu(x) = integral of -log delta(x,y) dmu_R(y); constant 7 zeta(3)/(2 pi^2)
// away from {-1, 1, infinity}.
double potential_real(double x, double tol = 1e-10);

// mu_L(B(0, 1/q^n)) = 1 / (q^(n-1) (q+1)), exact.
BigRat ball_mass_padic(long long p, long long n);
// mu_L({delta(0,y) = 1/q^n}) = (q-1) / (q^n (q+1)), exact.
BigRat sphere_mass_padic(long long p, long long n);

// Sampler for mu_R. Inverse-CDF on (0,1) from a tabulated CDF (monotone
// cubic cells with exact density slopes, one Newton correction against the
// density), composed with a random sign and a random inversion x -> 1/x.
class RealEquilibrium {
 public:
  explicit RealEquilibrium(int table_size = 4096, double tol = 1e-10);

  double quarter_mass() const { return cdf_.back(); }  // F(1) ~ 1/4
  double cdf01(double x) const;                        // F on [0,1]
  double invert01(double t) const;                     // t in [0, F(1))

  double sample_affine(RngStream& rng) const;
  metric::ProjectivePoint sample(RngStream& rng) const;

 private:
  struct Decision {
    double x01;
    bool negate;
    bool invert;
  };
  Decision draw_decision(RngStream& rng) const;

  int m_;
  double tol_;
  std::vector<double> cdf_;   // F(k/m), k = 0..m
  std::vector<double> dens_;  // density at k/m, k = 0..m-1 (singular at 1)
};

// Sampler for the PGL_2(O)-invariant measure on P^1(Q_p): two uniform
// digit strings in Z_p to the requested precision, rejected when both are
// divisible by p, assembled as a homogeneous pair.
class PadicEquilibrium {
 public:
  explicit PadicEquilibrium(long long p, long long precision = padic::PadicNumber::kDefaultPrec);

  long long prime() const { return p_; }
  long long precision() const { return prec_; }
  metric::ProjectivePoint sample(RngStream& rng) const;

 private:
  long long p_;
  long long prec_;
};

// Field-generic handle used by the Monte Carlo drivers.
class EquilibriumSampler {
 public:
  static EquilibriumSampler real(int table_size = 4096, double tol = 1e-10);
  static EquilibriumSampler real_shared(std::shared_ptr<const RealEquilibrium> eq);
  static EquilibriumSampler padic(long long p,
                                  long long precision = padic::PadicNumber::kDefaultPrec);

  metric::ProjectivePoint sample(RngStream& rng) const;
  metric::PointSampler drawer() const;
  double target_energy() const;
  metric::FieldContext context() const;

 private:
  EquilibriumSampler() = default;
  std::shared_ptr<const RealEquilibrium> real_;
  std::shared_ptr<const PadicEquilibrium> padic_;
};

}  // namespace p1energy::equilibrium
