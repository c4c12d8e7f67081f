#include <benchmark/benchmark.h>

#include "psc/exactpow.hpp"
#include "psc/expsum.hpp"
#include "psc/factor.hpp"
#include "psc/primes.hpp"

namespace {

void BM_FloorPowSmall(benchmark::State& state) {
  const psc::RationalExponent c(10521, 10000);
  std::uint64_t n = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psc::floor_pow_u128(n, c));
    n += 2;
  }
}
BENCHMARK(BM_FloorPowSmall);

// Large numerators push the power past the exact path into interval evaluation.
void BM_FloorPowCertified(benchmark::State& state) {
  const psc::RationalExponent c(static_cast<unsigned long>(state.range(0)) + 1,
                                static_cast<unsigned long>(state.range(0)));
  const psc::BigInt n("123456789012345678901234567890");
  for (auto _ : state) benchmark::DoNotOptimize(psc::floor_pow(n, c));
}
BENCHMARK(BM_FloorPowCertified)->Arg(16)->Arg(1000)->Arg(100000);

void BM_FracScaledPow(benchmark::State& state) {
  const psc::RationalExponent c(11, 5);
  std::uint64_t p = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(psc::frac_scaled_pow(p, c, 3, 7));
    p += 2;
  }
}
BENCHMARK(BM_FracScaledPow);

void BM_PrimeCount(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(psc::prime_count(x, psc::Exec{1}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x));
}
BENCHMARK(BM_PrimeCount)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

void BM_Factor64(benchmark::State& state) {
  // product of two primes near 2^31
  const psc::u128 n = static_cast<psc::u128>(2147483647ULL) * 2147483629ULL;
  for (auto _ : state) benchmark::DoNotOptimize(psc::factor_signature(n));
}
BENCHMARK(BM_Factor64);

void BM_Factor128(benchmark::State& state) {
  const psc::u128 n = static_cast<psc::u128>(1125899906842679ULL) * 1099511627791ULL;
  for (auto _ : state) benchmark::DoNotOptimize(psc::factor_signature(n));
}
BENCHMARK(BM_Factor128)->Unit(benchmark::kMillisecond);

void BM_WeylSum(benchmark::State& state) {
  const psc::RationalExponent c(5, 2);
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(psc::weyl_sum(c, psc::Rational(1), psc::Rational(3, 10), N, psc::Rational(1, 1000),
                                           psc::SumOptions{psc::Exec{1}}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(N));
}
BENCHMARK(BM_WeylSum)->Arg(1'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
