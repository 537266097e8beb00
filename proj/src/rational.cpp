#include "slopecert/rational.hpp"

#include <cctype>

#include "slopecert/errors.hpp"

namespace slopecert {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool has_leading_zero(std::string_view digits) {
  return digits.size() > 1 && digits.front() == '0';
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_canonical(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw ParseError("rational must be written as num/den: '" + std::string(text) + "'",
                     1, 1);
  }
  std::string_view num = text.substr(0, slash);
  const std::string_view den = text.substr(slash + 1);
  if (!num.empty() && num.front() == '-') num.remove_prefix(1);
  if (!all_digits(num) || !all_digits(den) || has_leading_zero(num) ||
      has_leading_zero(den) || den == "0" || (text.front() == '-' && num == "0")) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 1, 1);
  }
  Rational q(std::string(text), 10);
  Rational canonical = q;
  canonical.canonicalize();
  if (canonical.get_num() != q.get_num() || canonical.get_den() != q.get_den()) {
    throw ParseError("rational not in lowest terms: '" + std::string(text) + "'", 1, 1);
  }
  return canonical;
}

Rational parse_rational(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
    digits.remove_prefix(1);
  }
  if (!all_digits(digits) || !all_digits(den)) {
    throw ParseError("not a rational number: '" + std::string(text) + "'", 1, 1);
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 1, 1);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

int sign(const Rational& q) { return sgn(q); }

Rational inverse_power_of_two(unsigned exponent) {
  mpz_class den = 1;
  den <<= exponent;
  return Rational(mpz_class(1), den);
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace slopecert
