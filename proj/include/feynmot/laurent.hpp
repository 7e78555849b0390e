#pragma once

#include "feynmot/numeric.hpp"

#include <map>
#include <ostream>
#include <string>

namespace feynmot {

struct LaurentWindow {
  /// Maximal polar depth: coefficients of z^i with i < -K are never allowed.
  int K = 12;
  /// Highest regular exponent carried.
  int M = 12;
};

/// Truncated Laurent series in z with exact rational coefficients. Every value
/// knows its precision: coefficients of z^i are exact for i < precision() and
/// unknown beyond.
class LaurentSeries {
 public:
  LaurentSeries() : LaurentSeries(LaurentWindow{}) {}
  explicit LaurentSeries(LaurentWindow window);
  /// Exact constant (precision M + 1).
  static LaurentSeries constant(const Rational& c, LaurentWindow window = {});
  /// c z^power, exact.
  static LaurentSeries monomial(const Rational& c, int power, LaurentWindow window = {});
  /// exp(c z) to order M.
  static LaurentSeries exp_linear(const Rational& c, LaurentWindow window = {});

  const LaurentWindow& window() const { return window_; }
  int precision() const { return precision_; }
  const std::map<int, Rational>& coefficients() const { return coeffs_; }
  /// Throws TruncationError if i >= precision().
  Rational coeff(int i) const;
  /// Lowest exponent with a nonzero coefficient, or precision() if none is known.
  int valuation() const;
  /// True when all known coefficients vanish.
  bool is_zero() const { return coeffs_.empty(); }

  /// Sets z^power to c; power must lie inside the window and below precision().
  void set(int power, const Rational& c);
  /// Lowers the precision (never raises it); drops coefficients at or beyond it.
  LaurentSeries truncated(int precision) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator-(const LaurentSeries& a);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const Rational& s, LaurentSeries a);

  /// Compares coefficients below the common precision; throws TruncationError
  /// when that precision does not reach z^0.
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

  /// Projection onto the polar part (exponents < 0). Needs precision > 0.
  LaurentSeries polar_part() const;
  /// Everything at exponent >= 0, with the original precision.
  LaurentSeries regular_part() const;
  bool is_pure_polar() const;
  bool is_regular() const;

  /// Compact text, e.g. "1/2*z^-2 - z^-1 + 3 + O(z^13)".
  std::string to_string() const;

 private:
  void check_depth() const;
  LaurentWindow window_;
  int precision_;
  std::map<int, Rational> coeffs_;
};

/// Weight -1 Rota-Baxter operator: projection onto the polar part.
inline std::ostream& operator<<(std::ostream& out, const LaurentSeries& s) { return out << s.to_string(); }

inline LaurentSeries rota_baxter_T(const LaurentSeries& s) { return s.polar_part(); }

}  // namespace feynmot
