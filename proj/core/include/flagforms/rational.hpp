#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flagforms {

// Exact rationals over arbitrary-precision integers (GMP).
using Rational = mpq_class;

// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

}  // namespace flagforms
