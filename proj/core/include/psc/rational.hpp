#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace psc {

using BigInt = mpz_class;
using Rational = mpq_class;
using u128 = unsigned __int128;

// Exact parse of "a/b", a finite decimal ("1.0521", "-0.25") or scientific
// notation ("1e6", "2.5e-3"). Throws Error{NotAFraction} on anything else.
Rational parse_rational(std::string_view text);

// Like parse_rational, but the value must be a non-negative integer that fits
// in 64 bits ("1e6" -> 1000000).
std::uint64_t parse_natural(std::string_view text);

// "num/den", always with an explicit denominator.
std::string to_fraction_string(const Rational& q);

BigInt floor(const Rational& q);
BigInt ceil(const Rational& q);

// Correctly rounded (mpq_class::get_d truncates).
double to_double(const Rational& q);

BigInt to_bigint(u128 v);
// Empty when v is negative or needs more than 128 bits.
std::optional<u128> to_u128(const BigInt& v);
std::string to_string(u128 v);

// floor(log2 v) + 1 for v > 0, 0 for v = 0.
std::size_t bit_length(const BigInt& v);

}  // namespace psc
