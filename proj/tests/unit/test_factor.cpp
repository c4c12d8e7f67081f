#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "psc/error.hpp"
#include "psc/factor.hpp"
#include "psc/oracle.hpp"

using namespace psc;

namespace {

u128 pow2(unsigned k) { return static_cast<u128>(1) << k; }

u128 product(const Factorization& f) {
  u128 n = f.unfactored;
  for (const auto& pp : f.factors)
    for (unsigned i = 0; i < pp.k; ++i) n *= pp.p;
  return n;
}

struct Sig {
  u128 n;
  unsigned omega;
  bool squarefree;
};

}  // namespace

TEST(IsPrime, Small) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(341));
  EXPECT_FALSE(is_prime(561));
  EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
  EXPECT_TRUE(is_prime(2305843009213693951ULL));
  EXPECT_TRUE(is_prime(18446744073709551557ULL));
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 200'000; ++n) EXPECT_EQ(is_prime(n), oracle::trial_signature(n).prime) << n;
}

TEST(IsPrime, Wide) {
  const auto v = is_prime_u128(pow2(89) - 1);  // Mersenne prime
  EXPECT_TRUE(v.prime);
  EXPECT_TRUE(v.probabilistic);
  EXPECT_FALSE(is_prime_u128(pow2(67) - 1).prime);
  EXPECT_FALSE(is_prime_u128(97).probabilistic);
}

TEST(FactorSignature, Examples) {
  auto s = factor_signature(12);
  EXPECT_EQ(s.omega_big, 3u);
  EXPECT_FALSE(s.squarefree);
  s = factor_signature(1);
  EXPECT_EQ(s.omega_big, 0u);
  EXPECT_TRUE(s.squarefree);
  EXPECT_FALSE(s.prime);
  EXPECT_EQ(factor_signature(27648).omega_big, 13u);
}

TEST(FactorSignature, FrozenWideValues) {
  const u128 m61 = pow2(61) - 1;
  const std::vector<Sig> cases = {
      {pow2(64) + 1, 2, true},
      {pow2(67) - 1, 2, true},
      {m61 * m61, 2, false},
      {pow2(127) - 2, 15, false},
      {600851475143ULL, 4, true},
      {1000000016000000063ULL, 2, true},
      {static_cast<u128>(18446744073709551557ULL) * 3, 2, true},
      {pow2(127) - 3, 4, false},
  };
  for (const auto& c : cases) {
    const auto s = factor_signature(c.n);
    EXPECT_EQ(s.omega_big, c.omega) << to_string(c.n);
    EXPECT_EQ(s.squarefree, c.squarefree) << to_string(c.n);
    EXPECT_FALSE(s.prime) << to_string(c.n);
  }
}

TEST(Factorize, RecomposesToN) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    u128 n = 1;
    for (;;) {
      const u128 f = rng() % (1ULL << 36) + 2;
      if (n > (pow2(127) - 1) / f) break;
      n *= f;
    }
    const auto f = factorize(n);
    EXPECT_TRUE(f.complete);
    EXPECT_EQ(product(f), n);
    for (std::size_t j = 1; j < f.factors.size(); ++j) EXPECT_LT(f.factors[j - 1].p, f.factors[j].p);
  }
}

TEST(FactorSignature, AgreesWithTrialDivision) {
  for (std::uint64_t n = 1; n <= 300'000; ++n) {
    const auto s = factor_signature(n);
    const auto t = oracle::trial_signature(n);
    ASSERT_EQ(s.omega_big, t.omega_big) << n;
    ASSERT_EQ(s.squarefree, t.squarefree) << n;
    ASSERT_EQ(s.prime, t.prime) << n;
  }
}

TEST(FactorSignature, OmegaIsAdditiveOnCoprimePairs) {
  std::mt19937_64 rng(23);
  int tested = 0;
  while (tested < 500) {
    const std::uint64_t a = rng() % 1'000'000 + 1, b = rng() % 1'000'000 + 1;
    if (std::gcd(a, b) != 1) continue;
    ++tested;
    EXPECT_EQ(factor_signature(static_cast<u128>(a) * b).omega_big,
              factor_signature(a).omega_big + factor_signature(b).omega_big);
  }
}

TEST(FactorSignature, Errors) {
  EXPECT_THROW(factor_signature(0), Error);
  EXPECT_THROW(factor_signature(pow2(127)), Error);
  Caps caps = Caps::current();
  caps.rho_iterations = 1;
  const u128 semiprime = static_cast<u128>(4294967291ULL) * 4294967279ULL;
  try {
    factor_signature(semiprime * 1000003, caps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FactorizationTimeout);
  }
}
