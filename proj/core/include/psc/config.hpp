#pragma once

#include <cstdint>

namespace psc {

// Resource caps shared by every module. The process-wide instance is built
// once from the defaults, scaled by the PSC_LAB_CAP environment variable
// (a positive factor, e.g. PSC_LAB_CAP=10), and never mutated afterwards.
struct Caps {
  std::uint64_t prime_limit = 10'000'000'000ULL;
  std::uint64_t mangoldt_limit = 10'000'000ULL;
  std::uint64_t bit_budget = 1'000'000;      // largest exact integer, in bits
  std::uint64_t precision_cap = 100'000;     // MPFR escalation ceiling, in bits
  std::uint64_t weyl_terms = 100'000'000ULL;
  std::uint64_t trilinear_terms = 100'000'000ULL;
  std::uint64_t triple_evaluations = 1'000'000'000ULL;
  std::uint64_t rho_iterations = 1ULL << 26;  // per Pollard-rho split

  // n^num below this many bits is evaluated by exact integer root extraction;
  // larger powers go through certified interval evaluation. Not scaled.
  std::uint64_t exact_path_bits = 4096;

  Caps scaled(double factor) const;

  static const Caps& current();
};

// Execution options for the data-parallel operations. Results never depend on
// `jobs`: work is split into fixed chunks and merged in chunk order.
struct Exec {
  unsigned jobs = default_jobs();

  static unsigned default_jobs();
};

// The library version, e.g. "0.3.0".
const char* version();

}  // namespace psc
