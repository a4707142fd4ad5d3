#pragma once

#include <string>
#include <vector>

#include "p1energy/bigint.hpp"

namespace p1energy {

// Integer-coefficient polynomial, constant term first. The zero polynomial
// has an empty coefficient vector; otherwise the leading coefficient is
// nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs_constant_first);

  // "c0,c1,..." with optional whitespace.
  static IntPolynomial parse(const std::string& csv);
  static IntPolynomial from_ll(std::initializer_list<long long> coeffs);

  bool is_zero() const { return c_.empty(); }
  long long degree() const { return static_cast<long long>(c_.size()) - 1; }  // -1 for zero
  const BigInt& coeff(long long i) const;  // 0 outside range
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& leading() const;

  BigInt eval(const BigInt& x) const;
  BigRat eval(const BigRat& x) const;

  IntPolynomial derivative() const;
  IntPolynomial negate() const;
  IntPolynomial multiply(const IntPolynomial& g) const;
  IntPolynomial add(const IntPolynomial& g) const;

  // x^deg * f(1/x), trimmed (drops trailing zero coefficients of f).
  IntPolynomial reversed() const;

  // f(a + b*x), exact.
  IntPolynomial compose_linear(const BigInt& a, const BigInt& b) const;

  // Divide every coefficient by d; throws unless exact.
  IntPolynomial divide_exact(const BigInt& d) const;

  BigInt content() const;  // gcd of coefficients, >= 0; 0 for zero poly
  IntPolynomial primitive_part() const;

  bool is_squarefree() const;  // deg gcd(f, f') == 0

  std::string to_string() const;  // human form, e.g. "x^2 - x - 1"
  std::string coeff_csv() const;  // "c0,c1,..."

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

 private:
  std::vector<BigInt> c_;
};

// gcd over Z via primitive PRS, returned primitive with positive leading
// coefficient; gcd(f, 0) = primitive f.
IntPolynomial poly_gcd(const IntPolynomial& f, const IntPolynomial& g);

// Res(f, g), exact (fraction-free elimination on the Sylvester matrix).
BigInt resultant(const IntPolynomial& f, const IntPolynomial& g);

// (-1)^(n(n-1)/2) Res(f, f') / lc(f); requires deg >= 1 (deg 1 -> 1).
BigInt discriminant(const IntPolynomial& f);

}  // namespace p1energy
