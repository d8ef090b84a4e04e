#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace fracperc {

/// Arbitrary-precision integer and rational used by every exact code path.
using BigInt = mpz_class;
using Rational = mpq_class;

/// "p/q" for non-integers, "p" for integers.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

/// Accepts "p/q", "p" or a finite decimal such as "0.152" (converted exactly).
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Natural logarithm of a positive big integer without overflowing a double.
double log_big(const BigInt& value);
long double log_big_long(const BigInt& value);

double to_double(const Rational& value);

}  // namespace fracperc
