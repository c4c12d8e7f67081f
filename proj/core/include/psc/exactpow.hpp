#pragma once

// Certified evaluation of n^c for rational c: exact floors of powers and
// fractional parts with rigorous error bounds.
//
// Two evaluation routes exist. Small powers (num * log2 n below
// Caps::exact_path_bits) are floored exactly by integer root extraction of
// n^num. Everything else goes through interval evaluation of exp(c ln n) with
// MPFR directed rounding, escalating the working precision until the floor is
// decided or the requested tolerance is met.

#include <cstdint>
#include <string>
#include <string_view>

#include "psc/config.hpp"
#include "psc/rational.hpp"

namespace psc {

// The exponent c = num/den of a Piatetski-Shapiro sequence: reduced,
// greater than one and not an integer.
class RationalExponent {
 public:
  // Throws IntegerExponent when den divides num, OutOfRange when c <= 1.
  RationalExponent(unsigned long num, unsigned long den);
  explicit RationalExponent(const Rational& value);

  unsigned long num() const noexcept { return num_; }
  unsigned long den() const noexcept { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;

 private:
  unsigned long num_;
  unsigned long den_;
};

// Accepts "1.0521", "3/2", "1.5e0". Errors: NotAFraction, IntegerExponent,
// OutOfRange.
RationalExponent parse_exponent(std::string_view text);

// A real number known to lie in [value - error_bound, value + error_bound].
struct CertifiedReal {
  double value = 0.0;
  double error_bound = 0.0;
  bool exact = false;  // value is the exact result (no rounding at all)

  double lo() const { return value - error_bound; }
  double hi() const { return value + error_bound; }
};

inline constexpr double kDefaultFracTol = 1e-12;
inline constexpr double kPhaseTol = 0x1p-48;

// floor(a^(1/k)) by Newton iteration from a floating-point estimate; exact.
BigInt integer_root(const BigInt& a, unsigned long k);

// floor(base^exponent) for a positive rational exponent, computed exactly as
// the integer den-th root of base^num. Throws Overflow past the bit budget.
BigInt floor_rational_power(const BigInt& base, const Rational& exponent,
                            const Caps& caps = Caps::current());

// floor(n^c), n >= 2. Never off by one.
BigInt floor_pow(const BigInt& n, const RationalExponent& c, const Caps& caps = Caps::current());

// Same, for sequence members that must stay below 2^127 (Overflow otherwise).
u128 floor_pow_u128(std::uint64_t n, const RationalExponent& c, const Caps& caps = Caps::current());

// {h * n^c / d} with error_bound <= tol. Exact when h * n^c / d is rational,
// i.e. when n is a perfect den-th power (in particular 0 when it is an
// integer). Errors: InvalidArgument (d = 0 or tol out of range),
// PrecisionExhausted.
CertifiedReal frac_scaled_pow(const BigInt& n, const RationalExponent& c, std::uint64_t h,
                              std::uint64_t d, double tol = kDefaultFracTol,
                              const Caps& caps = Caps::current());

// {z^c * N^delta} with error_bound <= tol, for N >= 2 and delta > 0 rational.
CertifiedReal frac_phase(const BigInt& z, const RationalExponent& c, const BigInt& N,
                         const Rational& delta, double tol = kPhaseTol,
                         const Caps& caps = Caps::current());

}  // namespace psc
