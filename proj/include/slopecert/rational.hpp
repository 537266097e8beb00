#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace slopecert {

/// Arbitrary-precision rational, always kept in canonical form
/// (coprime numerator/denominator, positive denominator).
using Rational = mpq_class;

/// Builds num/den and canonicalizes.
Rational make_rational(long num, long den = 1);

/// Canonical text form "num/den"; integers keep the "/1" suffix.
std::string to_string(const Rational& q);

/// Parses exactly the canonical "num/den" form produced by to_string.
/// Anything else (missing denominator, common factors, "+", zero or
/// negative denominator, leading zeros) throws ParseError.
Rational parse_canonical(std::string_view text);

/// Lenient parser for command-line input: accepts "7", "-3/4", "6/8".
Rational parse_rational(std::string_view text);

int sign(const Rational& q);

/// 2^-exponent.
Rational inverse_power_of_two(unsigned exponent);

double to_double(const Rational& q);

}  // namespace slopecert
