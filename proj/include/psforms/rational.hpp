#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace psforms {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or "-p/q". The result is canonicalized.
/// Throws InputError on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& value);

}  // namespace psforms
