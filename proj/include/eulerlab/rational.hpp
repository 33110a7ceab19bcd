#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace eulerlab {

using Rational = mpq_class;

/// Canonicalized rational from a numerator/denominator pair.
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// x^e with exact integer exponentiation of numerator and denominator.
Rational rational_pow(const Rational& x, unsigned long e);

/// Canonical "n" or "n/d" text (the form the DSL accepts).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace eulerlab
