#include <gtest/gtest.h>

#include <random>

#include "psc/error.hpp"
#include "psc/exactpow.hpp"
#include "psc/oracle.hpp"

using namespace psc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

BigInt big(const char* s) { return BigInt(s); }

}  // namespace

TEST(ParseExponent, DecimalsAndFractions) {
  EXPECT_EQ(parse_exponent("1.0521"), RationalExponent(10521, 10000));
  EXPECT_EQ(parse_exponent("3/2"), RationalExponent(3, 2));
  EXPECT_EQ(parse_exponent("6/4"), RationalExponent(3, 2));
  EXPECT_EQ(parse_exponent("1.5e0"), RationalExponent(3, 2));
  EXPECT_EQ(parse_exponent("2.2").str(), "11/5");
}

TEST(ParseExponent, Rejections) {
  EXPECT_EQ(code_of([] { parse_exponent("2"); }), ErrorCode::IntegerExponent);
  EXPECT_EQ(code_of([] { parse_exponent("4/2"); }), ErrorCode::IntegerExponent);
  EXPECT_EQ(code_of([] { parse_exponent("1"); }), ErrorCode::IntegerExponent);
  EXPECT_EQ(code_of([] { parse_exponent("0.9"); }), ErrorCode::OutOfRange);
  EXPECT_EQ(code_of([] { parse_exponent("abc"); }), ErrorCode::NotAFraction);
  EXPECT_EQ(code_of([] { parse_exponent("3/0"); }), ErrorCode::NotAFraction);
}

TEST(IntegerRoot, PerfectAndNeighbours) {
  const BigInt p = BigInt(1) << 200;
  EXPECT_EQ(integer_root(p, 5), BigInt(1) << 40);
  EXPECT_EQ(integer_root(p - 1, 5), (BigInt(1) << 40) - 1);
  EXPECT_EQ(integer_root(BigInt(832972004929), 5), 242);
  EXPECT_EQ(integer_root(BigInt(0), 3), 0);
  EXPECT_EQ(integer_root(BigInt(1), 7), 1);
}

TEST(FloorPow, SmallExamples) {
  EXPECT_EQ(floor_pow(3, RationalExponent(3, 2)), 5);
  EXPECT_EQ(floor_pow(2, RationalExponent(3, 2)), 2);
  EXPECT_EQ(floor_pow(97, RationalExponent(6, 5)), 242);
  EXPECT_EQ(floor_pow(10, RationalExponent(3, 2)), 31);
  EXPECT_EQ(floor_pow(2, RationalExponent(10521, 10000)), 2);
  EXPECT_EQ(floor_pow(59049, RationalExponent(7, 5)), 4782969);  // 3^10, exact power
}

TEST(FloorPow, FrozenLargeValues) {
  EXPECT_EQ(floor_pow(99991, RationalExponent(47, 16)), big("486838794350778"));
  EXPECT_EQ(floor_pow(big("123456789012345678901234567890"), RationalExponent(10521, 10000)),
            big("4047463188233029718824424371639"));
  EXPECT_EQ(floor_pow(big("1000000000000000009"), RationalExponent(3, 2)), big("1000000000000000013500000000"));
  EXPECT_EQ(floor_pow(big("18446744073709551557"), RationalExponent(5, 2)),
            big("1461501637330902906517530861862293252640914538495"));
}

TEST(FloorPow, CertifiedPathAgreesWithExactPath) {
  // num * log2(n) above exact_path_bits forces interval evaluation.
  Caps caps = Caps::current();
  caps.exact_path_bits = 8;
  const RationalExponent c(10521, 10000);
  for (const char* n : {"97", "999983", "123456789012345678901234567890"}) {
    EXPECT_EQ(floor_pow(big(n), c, caps), floor_pow(big(n), c)) << n;
  }
  EXPECT_EQ(floor_pow(59049, RationalExponent(7, 5), caps), 4782969);
}

TEST(FloorPow, DefiningInequality) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const BigInt n = BigInt(static_cast<unsigned long>(rng() % 1'000'000 + 2));
    const unsigned long den = rng() % 15 + 2;
    unsigned long num = den + 1 + rng() % (3 * den);
    if (num % den == 0) ++num;
    const RationalExponent c(num, den);
    const BigInt r = floor_pow(n, c);
    BigInt nn, lo, hi;
    mpz_pow_ui(nn.get_mpz_t(), n.get_mpz_t(), c.num());
    mpz_pow_ui(lo.get_mpz_t(), r.get_mpz_t(), c.den());
    const BigInt r1 = r + 1;
    mpz_pow_ui(hi.get_mpz_t(), r1.get_mpz_t(), c.den());
    EXPECT_LE(lo, nn);
    EXPECT_LT(nn, hi);
  }
}

TEST(FloorPow, MatchesBisectionOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const unsigned long n = rng() % 99'999 + 2;
    const unsigned long den = rng() % 15 + 2;
    unsigned long num = den + 1 + rng() % (2 * den);
    if (num % den == 0) ++num;
    const RationalExponent c(Rational(num, den));
    EXPECT_EQ(floor_pow(n, c), oracle::floor_pow(n, c.num(), c.den())) << n << "^" << c.str();
  }
}

TEST(FloorPow, MonotoneInN) {
  const RationalExponent c(10521, 10000);
  BigInt prev = 0;
  for (unsigned long n = 2; n < 3000; ++n) {
    const BigInt v = floor_pow(n, c);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(FloorPow, U128OverflowAndErrors) {
  EXPECT_EQ(floor_pow_u128(97, RationalExponent(6, 5)), static_cast<u128>(242));
  EXPECT_EQ(code_of([] { floor_pow_u128(~0ULL, RationalExponent(5, 2)); }), ErrorCode::Overflow);
  EXPECT_EQ(code_of([] { floor_pow(1, RationalExponent(3, 2)); }), ErrorCode::InvalidArgument);
}

TEST(FracScaledPow, Examples) {
  const auto c = RationalExponent(3, 2);
  const auto zero = frac_scaled_pow(4, c, 1, 1);
  EXPECT_TRUE(zero.exact);
  EXPECT_EQ(zero.value, 0.0);

  const auto a = frac_scaled_pow(2, c, 1, 1);
  EXPECT_NEAR(a.value, 0.8284271247461900976, 1e-12);
  EXPECT_LE(a.error_bound, kDefaultFracTol);

  EXPECT_NEAR(frac_scaled_pow(3, c, 1, 2).value, 0.5980762113533159402, 1e-12);
  EXPECT_NEAR(frac_scaled_pow(10007, RationalExponent(11, 5), 3, 7).value, 0.2484051318759914210, 1e-12);
  EXPECT_NEAR(frac_scaled_pow(999983, RationalExponent(10521, 10000), 5, 11).value, 0.7206073883696465931, 1e-12);
}

TEST(FracScaledPow, RationalResultsAreExact) {
  const auto r = frac_scaled_pow(16, RationalExponent(5, 4), 1, 3);  // 32/3
  EXPECT_EQ(r.value, 2.0 / 3.0);
  EXPECT_LT(r.error_bound, 0x1p-53);
  const auto half = frac_scaled_pow(16, RationalExponent(5, 4), 1, 64);  // 1/2
  EXPECT_TRUE(half.exact);
  EXPECT_EQ(half.value, 0.5);
  for (unsigned long n : {2UL, 17UL, 12345UL}) {
    const auto h0 = frac_scaled_pow(n, RationalExponent(7, 3), 0, 5);
    EXPECT_TRUE(h0.exact);
    EXPECT_EQ(h0.value, 0.0);
  }
}

TEST(FracScaledPow, Errors) {
  EXPECT_EQ(code_of([] { frac_scaled_pow(2, RationalExponent(3, 2), 1, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { frac_scaled_pow(2, RationalExponent(3, 2), 1, 1, 0.0); }), ErrorCode::InvalidArgument);
}

TEST(FracPhase, Examples) {
  const auto one = frac_phase(1, RationalExponent(5, 2), 100, Rational(1, 2));
  EXPECT_EQ(one.value, 0.0);
  EXPECT_NEAR(frac_phase(2, RationalExponent(5, 2), 4, Rational(1, 2)).value, 0.3137084989847603904, 1e-13);
  EXPECT_NEAR(frac_phase(7, RationalExponent(5, 2), 100, Rational(3, 10)).value, 0.1133585337036628037, 1e-13);
  EXPECT_NEAR(frac_phase(1234, RationalExponent(11, 5), 1000000, Rational(1)).value, 0.2052197857725252582, 1e-13);
  EXPECT_NEAR(frac_phase(50, RationalExponent(3, 2), 1000, Rational(1, 3)).value, 0.5339059327376220042, 1e-13);
}

TEST(FracPhase, ErrorBoundNeverStraddles) {
  for (unsigned long z = 2; z < 200; ++z) {
    const auto r = frac_phase(z, RationalExponent(5, 2), 100, Rational(3, 10));
    EXPECT_GE(r.lo(), 0.0);
    EXPECT_LT(r.hi(), 1.0);
    EXPECT_LE(r.error_bound, kPhaseTol);
  }
}
