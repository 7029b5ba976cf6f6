#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace shufflelab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "3", "1/3", "-2/7" or a decimal such as "0.25" / "1e-3" into an exact
/// rational (decimals are read as their exact decimal value).
Rational parse_rational(std::string_view text);

/// Exact rational equal to the binary value of a finite double.
Rational rational_from_double(double value);

/// "num/den" in lowest terms; integers render as "num/1" only when
/// `always_fraction` is set, otherwise as "num".
std::string to_fraction_string(const Rational& q, bool always_fraction = false);

/// x^k for k >= 0.
Rational pow(const Rational& x, unsigned long k);

}  // namespace shufflelab
