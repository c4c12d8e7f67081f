#pragma once

// Empirical statistics of the sequence floor(p^c) over primes p <= x.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "psc/config.hpp"
#include "psc/exactpow.hpp"

namespace psc {

// The primes p <= x together with their members floor(p^c).
struct PsSample {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::vector<std::uint64_t> primes;
  std::vector<u128> members;

  std::uint64_t pi_x() const { return primes.size(); }
};

// Errors: RangeTooLarge (x above the prime cap), Overflow (a member >= 2^127).
PsSample ps_sample(std::uint64_t x, const RationalExponent& c, const Exec& exec = {},
                   const Caps& caps = Caps::current());

struct CensusReport {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  unsigned R = 0;
  std::uint64_t count = 0;  // members with Omega <= R
  std::uint64_t pi_x = 0;
  double eta_hat = 0.0;     // count * log^2 x / x
};

CensusReport almost_prime_census(const PsSample& sample, unsigned R, const Exec& exec = {},
                                 const Caps& caps = Caps::current());
CensusReport almost_prime_census(std::uint64_t x, const RationalExponent& c, unsigned R, const Exec& exec = {},
                                 const Caps& caps = Caps::current());

inline constexpr double kSixOverPiSquared = 0.60792710185402662866;

struct SquarefreeReport {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::uint64_t count = 0;
  std::uint64_t pi_x = 0;
  double ratio = 0.0;
  double deviation = 0.0;  // |ratio - 6/pi^2|
};

SquarefreeReport squarefree_census(const PsSample& sample, const Exec& exec = {},
                                   const Caps& caps = Caps::current());
SquarefreeReport squarefree_census(std::uint64_t x, const RationalExponent& c, const Exec& exec = {},
                                   const Caps& caps = Caps::current());

struct PsPrimeReport {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::uint64_t pi_c = 0;   // primes p <= x with floor(p^c) prime
  std::uint64_t pi_x = 0;
  double balog_ref = 0.0;   // x / (c log^2 x)
};

PsPrimeReport ps_prime_count(const PsSample& sample, const Exec& exec = {});
PsPrimeReport ps_prime_count(std::uint64_t x, const RationalExponent& c, const Exec& exec = {},
                             const Caps& caps = Caps::current());

struct ResidueHistogram {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::uint64_t d = 1;
  std::vector<std::uint64_t> counts;  // counts[s] = #{members = s mod d}
};

ResidueHistogram residue_histogram(const PsSample& sample, std::uint64_t d);
ResidueHistogram residue_histogram(std::uint64_t x, const RationalExponent& c, std::uint64_t d,
                                   const Exec& exec = {}, const Caps& caps = Caps::current());

// The multiplicative density f(d) in the level-of-distribution sum.
enum class DensityModel {
  One,      // f(d) = 1: every class expects N/d
  Coprime,  // f(d) = d / phi(d): only reduced classes are populated
};

std::string to_string(DensityModel m);
DensityModel parse_density_model(std::string_view text);

struct LevelReport {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::uint64_t D = 1;
  DensityModel model = DensityModel::One;
  bool all_residues = false;  // max over every s rather than gcd(s, d) = 1
  std::uint64_t N = 0;        // pi(x)
  double E = 0.0;
  double normalized = 0.0;    // E log^2 N / N
};

// E = sum_{d <= D} max_{gcd(s,d)=1} |#{a = s mod d} - f(d) N / d|.
LevelReport level_error(const PsSample& sample, std::uint64_t D, DensityModel model = DensityModel::One,
                        bool all_residues = false, const Exec& exec = {});
LevelReport level_error(std::uint64_t x, const RationalExponent& c, std::uint64_t D,
                        DensityModel model = DensityModel::One, bool all_residues = false,
                        const Exec& exec = {}, const Caps& caps = Caps::current());

// Star discrepancy of a finite point set in [0, 1), exact for the given
// values: max_i max(i/N - x_(i), x_(i) - (i-1)/N) over the sorted points.
double star_discrepancy(std::span<const double> points);

struct DiscrepancyReport {
  std::uint64_t x = 0;
  RationalExponent c{3, 2};
  std::uint64_t h = 1;
  std::uint64_t d = 1;
  std::uint64_t n_points = 0;
  double dstar = 0.0;
};

// Discrepancy of {h p^c / d : p <= x}; each point certified to 1e-12.
DiscrepancyReport star_discrepancy(std::uint64_t x, const RationalExponent& c, std::uint64_t h,
                                   std::uint64_t d, const Exec& exec = {}, const Caps& caps = Caps::current());

}  // namespace psc
