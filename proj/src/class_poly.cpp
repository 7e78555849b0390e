#include "feynmot/class_poly.hpp"

#include "feynmot/errors.hpp"

namespace feynmot {

ClassPoly::ClassPoly(long long constant) : ClassPoly(BigInt(constant)) {}

ClassPoly::ClassPoly(const BigInt& constant) {
  if (constant != 0) coeffs_[0] = constant;
}

ClassPoly ClassPoly::L(int power) {
  ClassPoly p;
  p.coeffs_[power] = 1;
  return p;
}

ClassPoly ClassPoly::T(int power) {
  if (power < 0) throw ValidationError("ClassPoly::T: negative power");
  return (L() - ClassPoly(1)).pow(static_cast<unsigned>(power));
}

BigInt ClassPoly::coefficient(int power) const {
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

std::optional<int> ClassPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.rbegin()->first;
}

void ClassPoly::add(int power, const BigInt& c) {
  if (c == 0) return;
  auto& slot = coeffs_[power];
  slot += c;
  if (slot == 0) coeffs_.erase(power);
}

ClassPoly& ClassPoly::operator+=(const ClassPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add(k, c);
  return *this;
}

ClassPoly& ClassPoly::operator-=(const ClassPoly& o) {
  for (const auto& [k, c] : o.coeffs_) add(k, -c);
  return *this;
}

ClassPoly operator*(const ClassPoly& a, const ClassPoly& b) {
  ClassPoly r;
  for (const auto& [i, x] : a.coeffs_)
    for (const auto& [j, y] : b.coeffs_) r.add(i + j, x * y);
  return r;
}

ClassPoly ClassPoly::pow(unsigned exponent) const {
  ClassPoly result(1), base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    base = base * base;
    exponent >>= 1;
  }
  return result;
}

ClassPoly exact_divide(const ClassPoly& a, const ClassPoly& b) {
  if (b.is_zero()) throw InternalError("ClassPoly division by zero");
  ClassPoly rem = a, q;
  const int lead_power = b.coeffs_.rbegin()->first;
  const BigInt lead = b.coeffs_.rbegin()->second;
  const int low_power = b.coeffs_.begin()->first;
  // Long division from the top; the loop terminates once rem's span is shorter than b's.
  while (!rem.is_zero()) {
    const int rp = rem.coeffs_.rbegin()->first;
    const BigInt rc = rem.coeffs_.rbegin()->second;
    if (rp - lead_power + low_power < rem.coeffs_.begin()->first || rc % lead != 0)
      throw InternalError("ClassPoly division leaves a remainder");
    ClassPoly t;
    t.add(rp - lead_power, rc / lead);
    q += t;
    rem -= t * b;
  }
  return q;
}

BigInt ClassPoly::evaluate(const BigInt& x) const {
  if (!is_polynomial()) throw InternalError("ClassPoly has negative powers of L");
  BigInt total = 0;
  for (const auto& [k, c] : coeffs_) {
    BigInt v = c;
    for (int i = 0; i < k; ++i) v *= x;
    total += v;
  }
  return total;
}

Rational ClassPoly::evaluate(const Rational& x) const {
  Rational total = 0;
  for (const auto& [k, c] : coeffs_) total += Rational(c) * feynmot::pow(x, k);
  return total;
}

std::string ClassPoly::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto& [k, c] = *it;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (k == 0) {
      out += feynmot::to_string(mag);
      continue;
    }
    if (mag != 1) out += feynmot::to_string(mag);
    out += "L";
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace feynmot
