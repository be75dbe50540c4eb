#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace conflictsim {

// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

// Parses "7", "4/3", "-2", or a plain decimal such as "13.6" into an exact
// rational. Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" text, or "p" when the denominator is one.
std::string to_string(const Rational& value);

// num/den in lowest terms. The two-argument mpq_class constructor does not
// reduce, and GMP comparisons assume reduced operands.
inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& value) { return value.get_d(); }

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace conflictsim
