#include "asep/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace asep {

bool parse_decimal(std::string_view text, Rational& out) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  int scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return false;
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const char* first = text.data() + i;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr == first) return false;
    i = static_cast<std::size_t>(ptr - text.data());
  }
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) return false;

  // a leading 0 would make GMP read the digits as octal
  const auto nz = digits.find_first_not_of('0');
  digits = nz == std::string::npos ? "0" : digits.substr(nz);
  boost::multiprecision::mpz_int numerator(digits);
  long net = exponent - scale;
  boost::multiprecision::mpz_int ten_pow = boost::multiprecision::pow(
      boost::multiprecision::mpz_int(10), static_cast<unsigned>(net < 0 ? -net : net));
  Rational value = net >= 0 ? Rational(numerator * ten_pow) : Rational(numerator, ten_pow);
  out = negative ? Rational(-value) : value;
  return true;
}

std::string shortest_decimal(double x) {
  char buf[64];
  // %.17g always round-trips; take the shortest precision that also does.
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Rational rational_from_double(double x) {
  Rational r;
  parse_decimal(shortest_decimal(x), r);
  return r;
}

std::string to_string(const Rational& x) { return x.str(); }

}  // namespace asep
