#include "psc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psc/error.hpp"
#include "psc/factor.hpp"
#include "psc/parallel.hpp"
#include "psc/primes.hpp"

namespace psc {

namespace {

constexpr std::size_t kChunk = 2048;

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Sums pred(member) over fixed chunks of the sample.
template <class Pred>
std::uint64_t count_members(const PsSample& s, const Exec& exec, Pred pred) {
  const auto parts = detail::map_chunks<std::uint64_t>(chunk_count(s.members.size()), exec.jobs, [&](std::size_t i) {
    const std::size_t end = std::min(s.members.size(), (i + 1) * kChunk);
    std::uint64_t c = 0;
    for (std::size_t j = i * kChunk; j < end; ++j)
      if (pred(s.members[j])) ++c;
    return c;
  });
  return std::accumulate(parts.begin(), parts.end(), std::uint64_t{0});
}

std::uint64_t euler_phi(std::uint64_t d) {
  std::uint64_t phi = d;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    while (d % p == 0) d /= p;
    phi -= phi / p;
  }
  if (d > 1) phi -= phi / d;
  return phi;
}

double log_squared_over(double v) {
  const double l = std::log(v);
  return l * l / v;
}

}  // namespace

PsSample ps_sample(std::uint64_t x, const RationalExponent& c, const Exec& exec, const Caps& caps) {
  PsSample s;
  s.x = x;
  s.c = c;
  s.primes = primes_in(1, x, exec, caps);
  auto parts = detail::map_chunks<std::vector<u128>>(chunk_count(s.primes.size()), exec.jobs, [&](std::size_t i) {
    const std::size_t end = std::min(s.primes.size(), (i + 1) * kChunk);
    std::vector<u128> out;
    out.reserve(end - i * kChunk);
    for (std::size_t j = i * kChunk; j < end; ++j) out.push_back(floor_pow_u128(s.primes[j], c, caps));
    return out;
  });
  s.members.reserve(s.primes.size());
  for (const auto& part : parts) s.members.insert(s.members.end(), part.begin(), part.end());
  return s;
}

CensusReport almost_prime_census(const PsSample& sample, unsigned R, const Exec& exec, const Caps& caps) {
  if (R < 1) throw Error(ErrorCode::InvalidArgument, "R must be at least 1");
  if (sample.x < 2) throw Error(ErrorCode::InvalidArgument, "x must be at least 2");
  CensusReport r;
  r.x = sample.x;
  r.c = sample.c;
  r.R = R;
  r.pi_x = sample.pi_x();
  r.count = count_members(sample, exec, [&](u128 m) { return factor_signature(m, caps).omega_big <= R; });
  r.eta_hat = static_cast<double>(r.count) * log_squared_over(static_cast<double>(sample.x));
  return r;
}

CensusReport almost_prime_census(std::uint64_t x, const RationalExponent& c, unsigned R, const Exec& exec,
                                 const Caps& caps) {
  return almost_prime_census(ps_sample(x, c, exec, caps), R, exec, caps);
}

SquarefreeReport squarefree_census(const PsSample& sample, const Exec& exec, const Caps& caps) {
  SquarefreeReport r;
  r.x = sample.x;
  r.c = sample.c;
  r.pi_x = sample.pi_x();
  r.count = count_members(sample, exec, [&](u128 m) { return factor_signature(m, caps).squarefree; });
  r.ratio = r.pi_x == 0 ? 0.0 : static_cast<double>(r.count) / static_cast<double>(r.pi_x);
  r.deviation = std::abs(r.ratio - kSixOverPiSquared);
  return r;
}

SquarefreeReport squarefree_census(std::uint64_t x, const RationalExponent& c, const Exec& exec,
                                   const Caps& caps) {
  return squarefree_census(ps_sample(x, c, exec, caps), exec, caps);
}

PsPrimeReport ps_prime_count(const PsSample& sample, const Exec& exec) {
  if (sample.x < 2) throw Error(ErrorCode::InvalidArgument, "x must be at least 2");
  PsPrimeReport r;
  r.x = sample.x;
  r.c = sample.c;
  r.pi_x = sample.pi_x();
  r.pi_c = count_members(sample, exec, [](u128 m) { return is_prime_u128(m).prime; });
  const double lx = std::log(static_cast<double>(sample.x));
  r.balog_ref = static_cast<double>(sample.x) / (sample.c.to_double() * lx * lx);
  return r;
}

PsPrimeReport ps_prime_count(std::uint64_t x, const RationalExponent& c, const Exec& exec, const Caps& caps) {
  return ps_prime_count(ps_sample(x, c, exec, caps), exec);
}

ResidueHistogram residue_histogram(const PsSample& sample, std::uint64_t d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  ResidueHistogram h;
  h.x = sample.x;
  h.c = sample.c;
  h.d = d;
  h.counts.assign(d, 0);
  for (const u128 m : sample.members) ++h.counts[static_cast<std::size_t>(m % d)];
  return h;
}

ResidueHistogram residue_histogram(std::uint64_t x, const RationalExponent& c, std::uint64_t d, const Exec& exec,
                                   const Caps& caps) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  return residue_histogram(ps_sample(x, c, exec, caps), d);
}

std::string to_string(DensityModel m) { return m == DensityModel::One ? "one" : "coprime"; }

DensityModel parse_density_model(std::string_view text) {
  if (text == "one" || text == "constant-1") return DensityModel::One;
  if (text == "coprime") return DensityModel::Coprime;
  throw Error(ErrorCode::InvalidArgument, "unknown density model '" + std::string(text) + "'");
}

LevelReport level_error(const PsSample& sample, std::uint64_t D, DensityModel model, bool all_residues,
                        const Exec& exec) {
  if (D < 1) throw Error(ErrorCode::InvalidArgument, "D must be at least 1");
  LevelReport r;
  r.x = sample.x;
  r.c = sample.c;
  r.D = D;
  r.model = model;
  r.all_residues = all_residues;
  r.N = sample.pi_x();
  const double N = static_cast<double>(r.N);

  const auto terms = detail::map_chunks<double>(D, exec.jobs, [&](std::size_t i) {
    const std::uint64_t d = i + 1;
    const double f = model == DensityModel::One ? 1.0 : static_cast<double>(d) / static_cast<double>(euler_phi(d));
    const double expected = f * N / static_cast<double>(d);
    std::vector<std::uint64_t> counts(d, 0);
    for (const u128 m : sample.members) ++counts[static_cast<std::size_t>(m % d)];
    double worst = 0.0;
    for (std::uint64_t s = 0; s < d; ++s) {
      if (!all_residues && std::gcd(s, d) != 1) continue;
      worst = std::max(worst, std::abs(static_cast<double>(counts[s]) - expected));
    }
    return worst;
  });
  double sum = 0.0, comp = 0.0;
  for (const double t : terms) {
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  r.E = sum;
  r.normalized = r.N < 2 ? 0.0 : r.E * log_squared_over(N);
  return r;
}

LevelReport level_error(std::uint64_t x, const RationalExponent& c, std::uint64_t D, DensityModel model,
                        bool all_residues, const Exec& exec, const Caps& caps) {
  if (D < 1) throw Error(ErrorCode::InvalidArgument, "D must be at least 1");
  return level_error(ps_sample(x, c, exec, caps), D, model, all_residues, exec);
}

double star_discrepancy(std::span<const double> points) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "star discrepancy of an empty point set");
  std::vector<double> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  const long double n = static_cast<long double>(sorted.size());
  long double worst = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const long double xi = sorted[i];
    worst = std::max(worst, static_cast<long double>(i + 1) / n - xi);
    worst = std::max(worst, xi - static_cast<long double>(i) / n);
  }
  return static_cast<double>(worst);
}

DiscrepancyReport star_discrepancy(std::uint64_t x, const RationalExponent& c, std::uint64_t h, std::uint64_t d,
                                   const Exec& exec, const Caps& caps) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "d must be at least 1");
  const auto primes = primes_in(1, x, exec, caps);
  if (primes.empty()) throw Error(ErrorCode::InvalidArgument, "no primes up to x");
  auto parts = detail::map_chunks<std::vector<double>>(chunk_count(primes.size()), exec.jobs, [&](std::size_t i) {
    const std::size_t end = std::min(primes.size(), (i + 1) * kChunk);
    std::vector<double> out;
    for (std::size_t j = i * kChunk; j < end; ++j)
      out.push_back(frac_scaled_pow(BigInt(static_cast<unsigned long>(primes[j])), c, h, d, kDefaultFracTol, caps).value);
    return out;
  });
  std::vector<double> points;
  points.reserve(primes.size());
  for (const auto& part : parts) points.insert(points.end(), part.begin(), part.end());

  DiscrepancyReport r;
  r.x = x;
  r.c = c;
  r.h = h;
  r.d = d;
  r.n_points = points.size();
  r.dstar = star_discrepancy(points);
  return r;
}

}  // namespace psc
