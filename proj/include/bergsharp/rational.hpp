#pragma once

// Exact rational scalar. All coefficient-level identities and inequalities
// are decided on these values; nothing here ever rounds.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bergsharp {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Builds num/den in canonical form. Throws InvalidArgument when den == 0.
Rational make_rational(long num, long den = 1);

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "p", "p/q", or a finite decimal such as "2.5" or "-1.25e1".
/// Throws InvalidArgument on malformed input.
Rational parse_rational(std::string_view text);

/// Always "num/den", also for integers ("3/1").
std::string to_fraction_string(const Rational& q);

Rational pow(const Rational& base, long exponent);

bool is_integer(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace bergsharp
