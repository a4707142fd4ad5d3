#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p1energy/bigint.hpp"
#include "p1energy/intpoly.hpp"

namespace p1energy::padic {

struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};
struct NotSquarefree : std::invalid_argument {
  explicit NotSquarefree(const std::string& what) : std::invalid_argument(what) {}
};
struct DepthExceeded : std::runtime_error {
  explicit DepthExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Valuation of an exact rational; nullopt means +infinity (x = 0).
std::optional<long long> ord_p(const BigRat& x, long long p);

// Element of Q_p in one of three states:
//   * exact: a rational number carried exactly (valuations certain forever);
//   * finite precision: u * p^v with the unit u known modulo p^rel_prec;
//   * ball: O(p^k), indistinguishable from zero below p^k.
// Arithmetic tracks the surviving precision and refuses to certify a
// valuation it does not know; delta computations are exact or fail loudly.
class PadicNumber {
 public:
  static constexpr long long kDefaultPrec = 32;

  static PadicNumber zero(long long p);                          // exact
  static PadicNumber one(long long p);                           // exact
  static PadicNumber from_integer(long long p, const BigInt& n);     // exact
  static PadicNumber from_rational(long long p, const BigRat& x);    // exact
  // Finite-precision digit string: unit mod p^rel_prec times p^val.
  static PadicNumber from_unit_val(long long p, BigInt unit, long long val, long long rel_prec);
  // Value known only as a residue modulo p^abs_prec (sampled digits, lifted
  // roots); residue 0 yields the O(p^abs_prec) ball.
  static PadicNumber from_residue(long long p, const BigInt& value, long long abs_prec);
  // Error ball O(p^abs_prec).
  static PadicNumber zero_to_precision(long long p, long long abs_prec);

  long long prime() const { return p_; }
  bool is_exact() const { return state_ == State::kExact; }
  bool is_exact_zero() const { return state_ == State::kExact && q_ == 0; }
  bool is_ball() const { return state_ == State::kBall; }
  // True when the value cannot be distinguished from zero.
  bool is_zeroish() const { return is_exact_zero() || is_ball(); }
  const BigRat& rational() const;  // exact values only

  // Valuation; throws PrecisionExhausted on a ball, nullopt (+inf) on zero.
  std::optional<long long> valuation() const;
  long long certified_val() const;    // valuation of a certified-nonzero value
  long long val_lower_bound() const;  // valuation >= this, always available
  const BigInt& unit() const;         // finite-precision values only
  long long rel_prec() const;         // huge sentinel for exact values
  long long abs_prec() const;         // value known modulo p^abs_prec

  double abs() const;  // p^(-v); 0 for exact zero; throws on a ball

  PadicNumber add(const PadicNumber& o) const;
  PadicNumber sub(const PadicNumber& o) const;
  PadicNumber mul(const PadicNumber& o) const;
  PadicNumber negated() const;
  PadicNumber mul_integer(const BigInt& n) const;
  PadicNumber shift(long long k) const;  // multiply by p^k
  PadicNumber div_unit(const PadicNumber& o) const;

  // Representative integer of the value modulo p^k (requires valuation >= 0).
  BigInt representative(long long k) const;

  // Identical stored representation (same state, value and precision); used
  // for canonical point comparison.
  static bool same_representation(const PadicNumber& a, const PadicNumber& b);
  static bool representation_less(const PadicNumber& a, const PadicNumber& b);

  std::string to_string() const;

 private:
  enum class State { kExact, kFinite, kBall };
  PadicNumber(long long p, State s) : p_(p), state_(s) {}

  BigInt exact_unit_mod(long long rel) const;  // unit of an exact value mod p^rel
  PadicNumber finite_view(long long abs_prec) const;

  long long p_ = 0;
  State state_ = State::kExact;
  BigRat q_ = 0;        // exact state
  BigInt unit_ = 0;     // finite state: reduced mod p^rel_prec_, coprime to p
  long long val_ = 0;   // finite state: valuation; ball state: bound exponent
  long long rel_prec_ = 0;
};

double padic_abs(const PadicNumber& x);

// Newton polygon: lower convex hull of (i, ord_p(a_i)); slopes strictly
// increasing, and the negated slopes are the valuations of the nonzero
// roots in an algebraic closure, with multiplicity = horizontal length.
struct NewtonSegment {
  BigRat slope;
  long long length;
  bool operator==(const NewtonSegment& o) const = default;
};

class NewtonPolygon {
 public:
  explicit NewtonPolygon(std::vector<NewtonSegment> segments) : seg_(std::move(segments)) {}
  const std::vector<NewtonSegment>& segments() const { return seg_; }
  // Valuations of the nonzero roots (negated slopes), repeated per length.
  std::vector<BigRat> root_valuations() const;
  // Sum over roots of max(0, -val), i.e. log_p of prod max(1, |root|_p);
  // an integer for a full polygon.
  BigInt positive_part() const;

 private:
  std::vector<NewtonSegment> seg_;
};

NewtonPolygon newton_polygon(const IntPolynomial& f, long long p);

// Exact count of roots of a squarefree f in Z_p.
long long count_roots_Zp(const IntPolynomial& f, long long p);

// Roots of f in Z_p as certified residues modulo p^prec (one per root).
std::vector<BigInt> roots_Zp(const IntPolynomial& f, long long p, long long prec);

// Count of roots in Q_p = roots in Z_p plus negative-valuation roots.
long long count_roots_Qp(const IntPolynomial& f, long long p);

// deg(f) roots in Q_p?
bool is_totally_split(const IntPolynomial& f, long long p);

}  // namespace p1energy::padic
