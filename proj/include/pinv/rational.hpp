#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pinv {

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with q > 0 and gcd(p, q) = 1. Integers are written as "p/1".
std::string to_string(const Rational& value);

/// Accepts "p/q", "p" and a leading sign. Throws Error(ParseError).
Rational parse_rational(std::string_view text);

}  // namespace pinv
