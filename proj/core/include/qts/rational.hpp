#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "qts/errors.hpp"

namespace qts {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Canonicalizing construction from a numerator and a nonzero denominator;
// division normalizes sign and gcd where the raw pair constructor would not.
inline Rational make_rational(const Int& num, const Int& den) {
  return Rational(num) / Rational(den);
}

// Canonical form "p/q" with q > 0 coprime to p, or "p" when q = 1.
std::string to_string(const Rational& x);

// Accepts "p" and "p/q" with optional leading '-' on either part.
// Rejects q = 0 and any other malformed literal with input_error.
// The result is always canonical; the gmp string constructor is avoided
// because it neither normalizes nor rejects zero denominators.
Rational parse_rational(const std::string& s);

}  // namespace qts
