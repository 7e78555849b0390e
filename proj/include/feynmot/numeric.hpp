#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace feynmot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q" or "p" (when q == 1).
std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

/// Parses "p", "-p", "p/q" or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

double to_double(const Rational& v);

BigInt factorial(unsigned n);

/// Exact integer power of a rational.
Rational pow(const Rational& base, int exponent);

}  // namespace feynmot
