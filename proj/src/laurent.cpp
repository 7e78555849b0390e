#include "feynmot/laurent.hpp"

#include "feynmot/errors.hpp"

#include <algorithm>
#include <sstream>

namespace feynmot {

LaurentSeries::LaurentSeries(LaurentWindow window) : window_(window), precision_(window.M + 1) {
  if (window.K < 0 || window.M < 0) throw ValidationError("Laurent window bounds must be non-negative");
}

LaurentSeries LaurentSeries::constant(const Rational& c, LaurentWindow window) { return monomial(c, 0, window); }

LaurentSeries LaurentSeries::monomial(const Rational& c, int power, LaurentWindow window) {
  LaurentSeries s(window);
  if (power > window.M) return s;
  s.set(power, c);
  return s;
}

LaurentSeries LaurentSeries::exp_linear(const Rational& c, LaurentWindow window) {
  LaurentSeries s(window);
  Rational term = 1;
  for (int k = 0; k <= window.M; ++k) {
    s.set(k, term);
    term = term * c / Rational(k + 1);
  }
  return s;
}

Rational LaurentSeries::coeff(int i) const {
  if (i >= precision_)
    throw TruncationError("coefficient of z^" + std::to_string(i) + " is beyond the series precision " +
                          std::to_string(precision_));
  auto it = coeffs_.find(i);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

int LaurentSeries::valuation() const { return coeffs_.empty() ? precision_ : coeffs_.begin()->first; }

void LaurentSeries::check_depth() const {
  if (!coeffs_.empty() && coeffs_.begin()->first < -window_.K)
    throw TruncationError("pole of order " + std::to_string(-coeffs_.begin()->first) +
                          " exceeds the Laurent window K=" + std::to_string(window_.K));
}

void LaurentSeries::set(int power, const Rational& c) {
  if (power >= precision_) throw TruncationError("cannot set a coefficient beyond the series precision");
  if (power < -window_.K && c != 0) {
    throw TruncationError("pole of order " + std::to_string(-power) + " exceeds the Laurent window K=" +
                          std::to_string(window_.K));
  }
  if (c == 0)
    coeffs_.erase(power);
  else
    coeffs_[power] = c;
}

LaurentSeries LaurentSeries::truncated(int precision) const {
  LaurentSeries s = *this;
  s.precision_ = std::min(precision_, precision);
  s.coeffs_.erase(s.coeffs_.lower_bound(s.precision_), s.coeffs_.end());
  return s;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  precision_ = std::min(precision_, o.precision_);
  coeffs_.erase(coeffs_.lower_bound(precision_), coeffs_.end());
  for (const auto& [k, c] : o.coeffs_) {
    if (k >= precision_) break;
    auto& slot = coeffs_[k];
    slot += c;
    if (slot == 0) coeffs_.erase(k);
  }
  return *this;
}

LaurentSeries operator-(const LaurentSeries& a) {
  LaurentSeries r = a;
  for (auto& [k, c] : r.coeffs_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this += -o; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries r(a.window_);
  r.precision_ = std::min({a.precision_ + b.valuation(), b.precision_ + a.valuation(), a.window_.M + 1});
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) {
      if (i + j >= r.precision_) break;
      auto& slot = r.coeffs_[i + j];
      slot += x * y;
      if (slot == 0) r.coeffs_.erase(i + j);
    }
  r.check_depth();
  return r;
}

LaurentSeries operator*(const Rational& s, LaurentSeries a) {
  if (s == 0) {
    a.coeffs_.clear();
    return a;
  }
  for (auto& [k, c] : a.coeffs_) c *= s;
  return a;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  const int p = std::min(a.precision_, b.precision_);
  if (p <= 0) throw TruncationError("series compared below their truncation order");
  auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
  auto skip = [p](auto& it, const auto& end) { return it == end || it->first >= p; };
  while (true) {
    bool ea = skip(ia, a.coeffs_.end()), eb = skip(ib, b.coeffs_.end());
    if (ea || eb) return ea && eb;
    if (ia->first != ib->first || ia->second != ib->second) return false;
    ++ia;
    ++ib;
  }
}

LaurentSeries LaurentSeries::polar_part() const {
  if (precision_ <= 0) throw TruncationError("polar part needs precision above z^-1");
  LaurentSeries r(window_);
  for (const auto& [k, c] : coeffs_) {
    if (k >= 0) break;
    r.coeffs_[k] = c;
  }
  return r;
}

LaurentSeries LaurentSeries::regular_part() const {
  if (precision_ <= 0) throw TruncationError("regular part needs precision above z^-1");
  LaurentSeries r = *this;
  r.coeffs_.erase(r.coeffs_.begin(), r.coeffs_.lower_bound(0));
  return r;
}

bool LaurentSeries::is_pure_polar() const {
  if (precision_ <= 0) throw TruncationError("series too short to decide");
  return coeffs_.empty() || coeffs_.rbegin()->first < 0;
}

bool LaurentSeries::is_regular() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

std::string LaurentSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : coeffs_) {
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
    first = false;
    if (k == 0) {
      out << feynmot::to_string(mag);
      continue;
    }
    if (mag != 1) out << feynmot::to_string(mag) << "*";
    out << "z";
    if (k != 1) out << "^" << k;
  }
  if (first) out << "0";
  out << " + O(z^" << precision_ << ")";
  return out.str();
}

}  // namespace feynmot
