#include "rowmarkov/rational.hpp"

#include "rowmarkov/error.hpp"

namespace rowmarkov {

Rational parse_fraction(const std::string& text) {
  if (text.empty()) throw Error("BadFraction", "empty probability string");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw Error("BadFraction", "zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      std::size_t places = text.size() - dot - 1;
      bool negative = !digits.empty() && digits[0] == '-';
      if (negative) digits.erase(0, 1);
      // Strip leading zeros: cpp_int would read "025" as octal.
      digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
      if (digits.empty()) digits = "0";
      BigInt num(digits);
      if (negative) num = -num;
      BigInt den = 1;
      for (std::size_t i = 0; i < places; ++i) den *= 10;
      return Rational(num, den);
    }
    return Rational(BigInt(text));
  } catch (const std::runtime_error&) {
    throw Error("BadFraction", "cannot parse '" + text + "' as a fraction");
  }
}

std::string fraction_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw Error("DivisionByZero", "0 raised to a negative power");
    return rational_pow(Rational(1) / base, -exponent);
  }
  Rational acc(1), b = base;
  long e = exponent;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace rowmarkov
