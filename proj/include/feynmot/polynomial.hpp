#pragma once

#include "feynmot/errors.hpp"
#include "feynmot/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace feynmot {

/// Exponent vector over variables t1, t2, ...; trailing zeros are trimmed so
/// that equal monomials compare equal regardless of the variable count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }
  static Monomial variable(std::size_t index, std::uint32_t power = 1) {
    std::vector<std::uint32_t> e(index + 1, 0);
    e[index] = power;
    return Monomial(std::move(e));
  }

  std::uint32_t operator[](std::size_t i) const { return i < exps_.size() ? exps_[i] : 0; }
  std::size_t size() const { return exps_.size(); }
  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (auto x : exps_) d += x;
    return d;
  }
  bool is_constant() const { return exps_.empty(); }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    std::vector<std::uint32_t> e(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
    return Monomial(std::move(e));
  }
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other[i]) return false;
    return true;
  }
  /// other / this; requires divides(other).
  Monomial cofactor(const Monomial& other) const {
    std::vector<std::uint32_t> e(other.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = other[i] - (*this)[i];
    return Monomial(std::move(e));
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const {
    if (exps_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (!exps_[i]) continue;
      if (!out.empty()) out += "*";
      out += "t" + std::to_string(i + 1);
      if (exps_[i] > 1) out += "^" + std::to_string(exps_[i]);
    }
    return out;
  }

 private:
  void trim() {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
  }
  std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order, largest first (t1 > t2 > ...).
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

/// Sparse multivariate polynomial with exact coefficients (BigInt or Rational).
template <class Coeff>
class SparsePolynomial {
 public:
  using Terms = std::map<Monomial, Coeff, GradedLexGreater>;

  SparsePolynomial() = default;
  SparsePolynomial(const Coeff& constant) {  // NOLINT(google-explicit-constructor)
    if (constant != 0) terms_.emplace(Monomial(), constant);
  }
  static SparsePolynomial variable(std::size_t index) {
    SparsePolynomial p;
    p.terms_.emplace(Monomial::variable(index), Coeff(1));
    return p;
  }
  static SparsePolynomial term(const Monomial& m, const Coeff& c) {
    SparsePolynomial p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t num_terms() const { return terms_.size(); }
  /// One past the highest variable index that occurs.
  std::size_t num_variables() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
  }
  std::optional<std::uint64_t> total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.degree();
  }
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Coeff& leading_coefficient() const { return terms_.begin()->second; }
  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Monomial& m, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Coeff(-c));
    return *this;
  }
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator-(const SparsePolynomial& a) { return SparsePolynomial() - a; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    SparsePolynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }
  friend SparsePolynomial operator*(const Coeff& s, SparsePolynomial a) {
    if (s == 0) return SparsePolynomial();
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

  /// Exact quotient a / b; throws InternalError if b does not divide a.
  friend SparsePolynomial exact_divide(const SparsePolynomial& a, const SparsePolynomial& b) {
    if (b.is_zero()) throw InternalError("polynomial division by zero");
    SparsePolynomial rem = a, q;
    const Monomial& lm = b.leading_monomial();
    const Coeff& lc = b.leading_coefficient();
    while (!rem.is_zero()) {
      const Monomial& rm = rem.leading_monomial();
      if (!lm.divides(rm)) throw InternalError("polynomial division leaves a remainder");
      Coeff rc = rem.leading_coefficient();
      Coeff qc = rc / lc;
      if (qc * lc != rc) throw InternalError("polynomial division leaves a remainder");
      SparsePolynomial t = term(lm.cofactor(rm), qc);
      q += t;
      rem -= t * b;
    }
    return q;
  }

  /// Common total degree of all terms, or nullopt when inhomogeneous (or zero).
  std::optional<std::uint64_t> homogeneity_degree() const {
    if (terms_.empty()) return std::nullopt;
    auto d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return std::nullopt;
    return d;
  }

  /// Canonical text: graded-lex order, e.g. "t1*t2 + t1*t3 - 2*t2^2 + 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool negative = c < 0;
      Coeff mag = negative ? Coeff(-c) : c;
      if (first) {
        if (negative) out << "-";
      } else {
        out << (negative ? " - " : " + ");
      }
      first = false;
      if (m.is_constant()) {
        out << feynmot::to_string(mag);
      } else {
        if (mag != 1) out << feynmot::to_string(mag) << "*";
        out << m.to_string();
      }
    }
    return out.str();
  }

  /// Evaluate with a coefficient-to-value conversion and a value per variable.
  template <class T, class Convert>
  T evaluate(const std::vector<T>& point, Convert convert) const {
    T total = T(0);
    for (const auto& [m, c] : terms_) {
      T v = convert(c);
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t k = 0; k < m[i]; ++k) v *= point.at(i);
      total += v;
    }
    return total;
  }

 private:
  Terms terms_;
};

using Polynomial = SparsePolynomial<BigInt>;
using RationalPolynomial = SparsePolynomial<Rational>;

inline RationalPolynomial to_rational(const Polynomial& p) {
  RationalPolynomial r;
  for (const auto& [m, c] : p.terms()) r.add_term(m, Rational(c));
  return r;
}

/// Monomial-by-monomial evaluator in double precision.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  template <class Coeff>
  explicit CompiledPolynomial(const SparsePolynomial<Coeff>& p) {
    for (const auto& [m, c] : p.terms()) {
      Term t;
      t.coeff = c.template convert_to<double>();
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t.factors.emplace_back(i, m[i]);
      terms_.push_back(std::move(t));
    }
  }
  double operator()(const double* x) const {
    double total = 0.0;
    for (const Term& t : terms_) {
      double v = t.coeff;
      for (auto [i, e] : t.factors)
        for (std::uint32_t k = 0; k < e; ++k) v *= x[i];
      total += v;
    }
    return total;
  }

 private:
  struct Term {
    double coeff = 0.0;
    std::vector<std::pair<std::size_t, std::uint32_t>> factors;
  };
  std::vector<Term> terms_;
};

}  // namespace feynmot
