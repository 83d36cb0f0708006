#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace rowmarkov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/7", "2", or a finite decimal like "0.25" (read exactly as 25/100).
Rational parse_fraction(const std::string& text);

// Canonical "num/den" rendering; integers render without the "/den" part.
std::string fraction_string(const Rational& value);

double to_double(const Rational& value);

// Integer powers, negative exponents allowed (base must be nonzero then).
Rational rational_pow(const Rational& base, long exponent);

}  // namespace rowmarkov
