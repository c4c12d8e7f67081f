#pragma once

// Reference implementations used only to cross-check the core library. They
// share no code paths with it: plain bisection instead of Newton, trial
// division instead of sieves and rho, and 256-bit MPFR phases summed in
// reverse order instead of certified doubles.

#include <complex>
#include <cstdint>

#include "psc/expsum.hpp"
#include "psc/rational.hpp"

namespace psc::oracle {

// floor(a^(1/k)) by bisection on [0, 2^(bits/k + 1)).
BigInt root_by_bisection(const BigInt& a, unsigned long k);

// floor(n^(num/den)).
BigInt floor_pow(const BigInt& n, unsigned long num, unsigned long den);

struct TrialSignature {
  unsigned omega_big = 0;
  bool squarefree = true;
  bool prime = false;
};

TrialSignature trial_signature(std::uint64_t n);

inline constexpr unsigned kPrecisionBits = 256;

std::complex<double> weyl_sum(const RationalExponent& c, const Rational& theta, const Rational& delta, std::uint64_t N);
std::complex<double> prime_expsum(std::uint64_t x, const RationalExponent& c, std::int64_t h, std::uint64_t d);
std::complex<double> trilinear_sum(std::uint64_t D, std::uint64_t M, std::uint64_t L, std::uint64_t h,
                                   const RationalExponent& c, const WeightSpec& weights);
double triple_sum(std::uint64_t x, std::uint64_t D, std::uint64_t H, const RationalExponent& c);

}  // namespace psc::oracle
