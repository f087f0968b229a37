#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace zimin {

using Integer = mpz_class;
using Rational = mpq_class;

Integer ipow(unsigned long base, unsigned long exp);
// q^e for a possibly negative exponent.
Rational qpow(unsigned long base, long exp);
Rational make_rational(const Integer& num, const Integer& den);

double to_double(const Rational& r);
// log10 of a positive rational, accurate for huge numerators/denominators.
double log10_of(const Rational& r);
// Fixed-point decimal with `digits` places, round-half-even.
std::string to_decimal(const Rational& r, unsigned digits);
// Scientific notation with `sig` significant digits, e.g. "1.12e-3".
std::string to_scientific(const Rational& r, unsigned sig);

// Accepts "a/b", "a", or a decimal like "0.25".
Rational parse_rational(std::string_view text);

}  // namespace zimin
