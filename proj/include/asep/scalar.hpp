#pragma once

// Scalar support for the two arithmetic modes: double for the solver path and
// GMP rationals for oracle-grade exact checks.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

namespace asep {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class S>
bool is_zero(const S& x) {
  return x == S(0);
}

template <class S>
S abs_value(const S& x) {
  return x < S(0) ? S(-x) : x;
}

template <class S>
S power(const S& base, int exponent) {
  S result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

// Parses plain decimal text ("0.4", "-1.25e-3", "7") into an exact rational.
// Returns false on malformed input.
bool parse_decimal(std::string_view text, Rational& out);

std::string shortest_decimal(double x);

// Shortest round-trip decimal rendering of a double, then parsed exactly; 0.4
// becomes 2/5 rather than the binary expansion of the double.
Rational rational_from_double(double x);

std::string to_string(const Rational& x);

}  // namespace asep
