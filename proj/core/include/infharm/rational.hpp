#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace infharm {

// Exact rational scalar.  boost::multiprecision keeps the value reduced with
// a positive denominator at all times, which is exactly the invariant the
// rest of the library relies on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p", "p/q", or a decimal literal with optional exponent ("-0.125", "2.5e3").
// Decimal input converts exactly, never through binary floating point.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

}  // namespace infharm
