#pragma once

#include "feynmot/numeric.hpp"

#include <map>
#include <optional>
#include <string>

namespace feynmot {

/// Laurent polynomial in the Lefschetz symbol L with integer coefficients.
/// Negative exponents are allowed transiently; see is_polynomial().
class ClassPoly {
 public:
  ClassPoly() = default;
  ClassPoly(long long constant);  // NOLINT(google-explicit-constructor)
  ClassPoly(const BigInt& constant);  // NOLINT(google-explicit-constructor)

  static ClassPoly L(int power = 1);
  /// T = L - 1, the class of the multiplicative group.
  static ClassPoly T(int power = 1);

  const std::map<int, BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int power) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_polynomial() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }
  std::optional<int> degree() const;

  ClassPoly& operator+=(const ClassPoly& o);
  ClassPoly& operator-=(const ClassPoly& o);
  friend ClassPoly operator+(ClassPoly a, const ClassPoly& b) { return a += b; }
  friend ClassPoly operator-(ClassPoly a, const ClassPoly& b) { return a -= b; }
  friend ClassPoly operator-(const ClassPoly& a) { return ClassPoly() - a; }
  friend ClassPoly operator*(const ClassPoly& a, const ClassPoly& b);
  friend bool operator==(const ClassPoly&, const ClassPoly&) = default;

  ClassPoly pow(unsigned exponent) const;

  /// Exact quotient; throws InternalError when b does not divide a in Z[L, 1/L].
  friend ClassPoly exact_divide(const ClassPoly& a, const ClassPoly& b);

  /// Value at L = x; requires is_polynomial() for integer evaluation.
  BigInt evaluate(const BigInt& x) const;
  Rational evaluate(const Rational& x) const;

  /// Descending powers, e.g. "L^2+3L+1", "L^3-L^2", "0".
  std::string to_string() const;

 private:
  void add(int power, const BigInt& c);
  std::map<int, BigInt> coeffs_;
};

}  // namespace feynmot
