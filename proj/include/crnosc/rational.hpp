#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace crnosc {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q", "-1.25" or "3e-2" into an exact rational.
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "p/q" (or "p" when the denominator is one).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double v);

int sign(const Rational& q);

std::vector<double> to_doubles(const std::vector<Rational>& v);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational approximate(double v, long max_den);

}  // namespace crnosc
