#pragma once

// Direct evaluation of the exponential sums around floor(p^c), each paired
// with the corresponding analytic upper bound as a comparator. The bounds
// carry unknown implied constants, so comparisons are reported as ratios and
// never fail.
//
// Every phase goes through the certified fractional parts of exactpow, and
// terms are accumulated with compensated summation in fixed chunks merged in
// a fixed order: results are bit-identical for any Exec::jobs.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "psc/config.hpp"
#include "psc/exactpow.hpp"
#include "psc/rational.hpp"

namespace psc {

// k = floor(c + delta/theta) + 1, exactly. Requires theta > 0, delta > 0.
unsigned k_of(const Rational& c, const Rational& theta, const Rational& delta);

// rho = (k - 2 - eps) / (k (k+1) (2k-1)). Errors: InvalidArgument (k < 3 or
// eps < 0), NonPositiveRho (eps >= k - 2).
Rational rho_of(unsigned k, const Rational& epsilon);

struct VinogradovParams {
  RationalExponent c{5, 2};
  Rational theta;
  Rational delta;
  Rational epsilon;
  unsigned k = 0;
  Rational rho;
};

VinogradovParams vinogradov_params(const RationalExponent& c, const Rational& theta, const Rational& delta,
                                   const Rational& epsilon);

enum class WeightKind { Unit, Interval, RandomSign };

std::string to_string(WeightKind w);
WeightKind parse_weight_kind(std::string_view text);

struct WeightSpec {
  WeightKind kind = WeightKind::Unit;
  std::uint64_t seed = 0;  // RandomSign: std::mt19937_64 stream, c_d then a_m then b_l
};

struct WeylParams {
  VinogradovParams vino;
  std::uint64_t N = 0;
  std::uint64_t z_floor = 0;  // floor(N^theta); z runs over (z_floor, 2 z_floor]
};

struct PrimeSumParams {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::int64_t h = 1;
  std::uint64_t d = 1;
};

struct TrilinearParams {
  std::uint64_t D = 1, M = 1, L = 1;
  std::uint64_t h = 1;
  RationalExponent c{3, 2};
  WeightSpec weights;
  double X = 0.0;  // h D^-1 L^c M^c
  bool x_at_least_dl = false;
};

struct TripleParams {
  std::uint64_t x = 0, D = 1, H = 0;
  RationalExponent c{3, 2};
};

enum class SumKind { Weyl, Prime, Trilinear, Triple };
std::string to_string(SumKind k);

struct SumEval {
  SumKind kind = SumKind::Weyl;
  std::variant<WeylParams, PrimeSumParams, TrilinearParams, TripleParams> params;
  std::complex<double> value;
  std::uint64_t terms = 0;
  double trivial_bound = 0.0;   // sum of |coefficients|; the term count for unimodular weights
  std::optional<double> bound;  // analytic comparator, when one applies
  std::optional<double> ratio;  // |value| / bound
};

struct SumOptions {
  Exec exec;
  bool reverse = false;     // sum every level in reverse order
  bool swap_loops = false;  // triple_sum only: d outer, h inner
};

// sum_{z_floor < z <= 2 z_floor} e(z^c N^delta), z_floor = floor(N^theta).
// Bound: N^{theta (1 - rho)}. Errors: InvalidArgument (k < 3),
// NonPositiveRho, RangeTooLarge, PrecisionExhausted.
SumEval weyl_sum(const RationalExponent& c, const Rational& theta, const Rational& delta, std::uint64_t N,
                 const Rational& epsilon = Rational(1, 1000), const SumOptions& opt = {},
                 const Caps& caps = Caps::current());

// sum_{p <= x} e(h p^c / d); h < 0 gives the conjugate sum. Bound
// x^{1 - sigma(c)} for c >= 11/5.
SumEval prime_expsum(std::uint64_t x, const RationalExponent& c, std::int64_t h, std::uint64_t d,
                     const SumOptions& opt = {}, const Caps& caps = Caps::current());

struct TrilinearBound {
  double value = 0.0;
  bool x_at_least_dl = false;  // the bound's hypothesis X >= DL
};

// DLM ((DL)^{-1/2} + (X/(DLM^2))^{1/6}) log(2DL).
TrilinearBound trilinear_bound(double D, double L, double M, double X);

// sum_{d~D} sum_{m~M} sum_{l~L} c_d a_m b_l e(h (lm)^c / d), with m ~ M
// meaning M < m <= 2M. Interval weights: c_d = a_m = 1 and b_l the
// indicator of L < l <= ceil(3L/2).
SumEval trilinear_sum(std::uint64_t D, std::uint64_t M, std::uint64_t L, std::uint64_t h, const RationalExponent& c,
                      const WeightSpec& weights, const SumOptions& opt = {}, const Caps& caps = Caps::current());

// sum_{1<=h<=H} sum_{d~D} | sum_{n~x} Lambda(n) e(h n^c / d) |, real-valued.
// Bound: D x / log^3 x. Needs 2x within the Mangoldt cap.
SumEval triple_sum(std::uint64_t x, std::uint64_t D, std::uint64_t H, const RationalExponent& c,
                   const SumOptions& opt = {}, const Caps& caps = Caps::current());

// H = ceil(D log^3 x), the h-range the uniform bound is stated for.
std::uint64_t triple_default_H(std::uint64_t x, std::uint64_t D);

}  // namespace psc
