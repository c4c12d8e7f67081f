#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "psc/config.hpp"

namespace psc {

inline constexpr std::uint64_t kSegmentWidth = std::uint64_t{1} << 18;

// Primality of every integer in [lo, hi). Only odd numbers are stored; the
// single even prime is answered directly.
class SieveSegment {
 public:
  SieveSegment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base_primes);

  std::uint64_t lo() const noexcept { return lo_; }
  std::uint64_t hi() const noexcept { return hi_; }

  bool is_prime(std::uint64_t n) const;
  std::uint64_t count() const;
  void append_primes(std::vector<std::uint64_t>& out) const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::uint64_t first_odd_;
  std::uint64_t odd_count_;
  std::vector<std::uint64_t> bits_;  // bit j <-> first_odd_ + 2j
};

// All primes <= limit by a plain sieve; used as sieving primes.
std::vector<std::uint32_t> small_primes(std::uint32_t limit);

std::uint64_t isqrt(std::uint64_t n);

// Primes in (lo, hi], ascending. Errors: RangeTooLarge (hi above the cap).
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi, const Exec& exec = {},
                                     const Caps& caps = Caps::current());

// pi(x). Errors: RangeTooLarge.
std::uint64_t prime_count(std::uint64_t x, const Exec& exec = {}, const Caps& caps = Caps::current());

struct MangoldtEntry {
  std::uint64_t n;  // a prime power p^k
  std::uint64_t p;
};

// Prime powers up to `limit` with their base primes, sorted by n. Lambda(n)
// is log p for listed n and 0 otherwise.
class MangoldtTable {
 public:
  MangoldtTable(std::uint64_t limit, std::vector<MangoldtEntry> entries);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const MangoldtEntry> entries() const noexcept { return entries_; }

  std::optional<std::uint64_t> base_prime(std::uint64_t n) const;
  double lambda(std::uint64_t n) const;

  // Entries with lo < n <= hi.
  std::span<const MangoldtEntry> range(std::uint64_t lo, std::uint64_t hi) const;

  // Chebyshev psi(limit) = sum of Lambda(n), compensated summation.
  double psi() const;

 private:
  std::uint64_t limit_;
  std::vector<MangoldtEntry> entries_;
};

// Errors: RangeTooLarge (x above Caps::mangoldt_limit).
MangoldtTable mangoldt_table(std::uint64_t x, const Exec& exec = {}, const Caps& caps = Caps::current());

}  // namespace psc
